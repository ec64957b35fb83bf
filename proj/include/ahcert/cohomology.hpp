#pragma once

#include "ahcert/numeric.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ahcert {

/// Element of Z[x_1..x_k]/(x_i^2), the integral cohomology ring of a product
/// of k two-spheres. Monomials are square-free, keyed by bitmasks over the
/// generators; zero coefficients are never stored, so equality is structural.
class CohomologyElement {
 public:
  explicit CohomologyElement(int k);

  static CohomologyElement one(int k);
  static CohomologyElement generator(int k, int i);  // x_i, 1-based

  int k() const { return k_; }
  const std::map<std::uint64_t, std::int64_t>& terms() const { return terms_; }
  std::int64_t coeff(std::uint64_t mask) const;
  CohomologyElement& add_term(std::uint64_t mask, std::int64_t c);
  bool is_one() const;
  bool is_zero() const { return terms_.empty(); }

  friend CohomologyElement operator+(const CohomologyElement& a, const CohomologyElement& b);
  friend CohomologyElement operator*(const CohomologyElement& a, const CohomologyElement& b);
  bool operator==(const CohomologyElement&) const = default;

 private:
  int k_ = 0;
  std::map<std::uint64_t, std::int64_t> terms_;
};

/// Symbolic expansion of prod_i (1 + sign_i * x_i). Exponential in k, so it
/// refuses past the brute-force cap; use chern_inverse_coeff beyond it.
inline constexpr int kChernBruteForceCap = 14;
CohomologyElement total_chern_external_sum(int k, const std::vector<int>& signs);

/// Degree-j coefficient of prod_i (1 - x_i): (-1)^j * C(k, j).
/// j > k yields 0 (no square-free monomial of that degree exists).
Int chern_inverse_coeff(const Int& k, std::int64_t j);

/// Whether the rank-k external sum of tautological line bundles over (S^2)^k
/// embeds in the trivial bundle of rank r. Obstructed exactly when r < 2k:
/// a complement would have rank r - k yet a nonzero degree-k class, namely
/// the coefficient (-1)^k of x_1...x_k in the inverse total class.
struct ObstructionCertificate {
  Int k, r;
  bool obstructed = false;
  Int witness_degree;       // = k when obstructed
  int coefficient_sign = 0; // +1 / -1 when obstructed
  std::string explanation;
};

ObstructionCertificate embeds_in_trivial(const Int& k, const Int& r);

}  // namespace ahcert
