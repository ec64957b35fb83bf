#include "ahcert/cohomology.hpp"

#include <stdexcept>

namespace ahcert {

namespace {

void require_k(int k) {
  if (k < 0 || k > 63) throw std::invalid_argument("generator count k out of range [0, 63]");
}

}  // namespace

CohomologyElement::CohomologyElement(int k) : k_(k) { require_k(k); }

CohomologyElement CohomologyElement::one(int k) {
  CohomologyElement e(k);
  e.terms_[0] = 1;
  return e;
}

CohomologyElement CohomologyElement::generator(int k, int i) {
  if (i < 1 || i > k) throw std::invalid_argument("generator index out of range");
  CohomologyElement e(k);
  e.terms_[1ULL << (i - 1)] = 1;
  return e;
}

std::int64_t CohomologyElement::coeff(std::uint64_t mask) const {
  auto it = terms_.find(mask);
  return it == terms_.end() ? 0 : it->second;
}

CohomologyElement& CohomologyElement::add_term(std::uint64_t mask, std::int64_t c) {
  if (k_ < 64 && (mask >> k_) != 0) throw std::invalid_argument("monomial uses generators beyond k");
  auto it = terms_.find(mask);
  if (it == terms_.end()) {
    if (c != 0) terms_[mask] = c;
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
  return *this;
}

bool CohomologyElement::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1;
}

CohomologyElement operator+(const CohomologyElement& a, const CohomologyElement& b) {
  if (a.k_ != b.k_) throw std::invalid_argument("mixed generator counts");
  CohomologyElement out = a;
  for (const auto& [mask, c] : b.terms_) out.add_term(mask, c);
  return out;
}

CohomologyElement operator*(const CohomologyElement& a, const CohomologyElement& b) {
  if (a.k_ != b.k_) throw std::invalid_argument("mixed generator counts");
  CohomologyElement out(a.k_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      if (ma & mb) continue;  // x_i^2 = 0
      out.add_term(ma | mb, ca * cb);
    }
  }
  return out;
}

CohomologyElement total_chern_external_sum(int k, const std::vector<int>& signs) {
  require_k(k);
  if (k > kChernBruteForceCap) {
    throw std::invalid_argument(
        "brute-force expansion refused for k = " + std::to_string(k) + " > cap " +
        std::to_string(kChernBruteForceCap) + " (2^k terms); use chern_inverse_coeff");
  }
  if (static_cast<int>(signs.size()) != k) throw std::invalid_argument("need one sign per factor");
  CohomologyElement out = CohomologyElement::one(k);
  for (int i = 1; i <= k; ++i) {
    if (signs[i - 1] != 1 && signs[i - 1] != -1) throw std::invalid_argument("signs must be +-1");
    CohomologyElement factor = CohomologyElement::one(k);
    factor.add_term(1ULL << (i - 1), signs[i - 1]);
    out = out * factor;
  }
  return out;
}

Int chern_inverse_coeff(const Int& k, std::int64_t j) {
  if (k < 0 || j < 0) throw std::invalid_argument("chern_inverse_coeff: negative argument");
  if (Int(j) > k) return 0;  // flagged by convention: no square-free monomial of degree j
  Int c = binomial(k, j);
  return (j % 2 == 0) ? c : -c;
}

ObstructionCertificate embeds_in_trivial(const Int& k, const Int& r) {
  if (k < 1) throw std::invalid_argument("embeds_in_trivial: k must be >= 1");
  if (r < 0) throw std::invalid_argument("embeds_in_trivial: r must be >= 0");
  ObstructionCertificate cert;
  cert.k = k;
  cert.r = r;
  cert.obstructed = r < 2 * k;
  if (cert.obstructed) {
    cert.witness_degree = k;
    cert.coefficient_sign = (k % 2 == 0) ? 1 : -1;
    cert.explanation = "a complement would have rank " + Int(r - k).str() +
                       " < " + k.str() + " but carries the nonzero degree-" + k.str() +
                       " class " + (cert.coefficient_sign > 0 ? "+" : "-") + "x_1...x_k";
  } else {
    cert.witness_degree = 0;
    cert.explanation = "rank budget " + Int(r - k).str() + " >= " + k.str() +
                       "; no characteristic-class obstruction";
  }
  return cert;
}

}  // namespace ahcert
