#include "ahcert/schedule.hpp"

#include <limits>
#include <stdexcept>

namespace ahcert {

Schedule Schedule::geometric(Int c, Int g) {
  if (c < 1) throw std::invalid_argument("geometric schedule needs c >= 1");
  if (g < 3) throw std::invalid_argument("geometric schedule needs g >= 3");
  Schedule s;
  s.kind = Kind::Geometric;
  s.coeff = std::move(c);
  s.base = std::move(g);
  return s;
}

Schedule Schedule::explicit_prefix(std::vector<Int> d) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] < 1) {
      throw std::invalid_argument("explicit schedule entry d(" +
                                  std::to_string(i + 1) + ") must be positive");
    }
  }
  Schedule s;
  s.kind = Kind::ExplicitPrefix;
  s.prefix = std::move(d);
  return s;
}

Int Schedule::d(int n) const {
  if (n < 0) throw std::invalid_argument("d(n): negative stage");
  if (n == 0) return 1;
  if (kind == Kind::Geometric) return coeff * pow(base, static_cast<unsigned>(n));
  if (n > static_cast<int>(prefix.size())) {
    throw std::invalid_argument("d(" + std::to_string(n) +
                                "): beyond explicit prefix of length " +
                                std::to_string(prefix.size()));
  }
  return prefix[static_cast<std::size_t>(n - 1)];
}

int Schedule::max_stage() const {
  if (kind == Kind::Geometric) return std::numeric_limits<int>::max();
  return static_cast<int>(prefix.size());
}

std::string Schedule::describe() const {
  if (kind == Kind::Geometric) {
    return "d(n) = " + coeff.str() + " * " + base.str() + "^n";
  }
  std::string out = "d = (";
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (i) out += ", ";
    out += prefix[i].str();
  }
  return out + ")";
}

Sequences::Sequences(Schedule schedule, int cap) : schedule_(std::move(schedule)), cap_(cap) {
  if (cap < 0) throw std::invalid_argument("sequence cap must be >= 0");
  if (cap > schedule_.max_stage()) {
    throw std::invalid_argument("cap " + std::to_string(cap) +
                                " exceeds schedule's representable stages (" +
                                std::to_string(schedule_.max_stage()) + ")");
  }
  d_.reserve(cap + 1);
  l_.reserve(cap + 1);
  r_.reserve(cap + 1);
  s_.reserve(cap + 1);
  ratio_.reserve(cap + 1);
  for (int n = 0; n <= cap; ++n) {
    Int dn = schedule_.d(n);
    Int ln = (n == 0) ? Int(1) : dn + pow2(n - 1);
    if (n >= 1 && dn <= pow2(n - 1)) {
      throw std::invalid_argument("schedule violates d(n) > 2^(n-1) at stage " +
                                  std::to_string(n) + ": d = " + dn.str());
    }
    d_.push_back(dn);
    l_.push_back(ln);
    r_.push_back(n == 0 ? ln : r_[n - 1] * ln);
    s_.push_back(n == 0 ? dn : s_[n - 1] * dn);
    ratio_.emplace_back(s_[n], r_[n]);
    if (n >= 1 && !(ratio_[n] < ratio_[n - 1])) {
      // cannot happen for a valid schedule; guards the derivation itself
      throw std::logic_error("ratio not strictly decreasing at stage " + std::to_string(n));
    }
  }
}

const Int& Sequences::at(const std::vector<Int>& v, int n) const {
  if (n < 0 || n > cap_) {
    throw std::invalid_argument("stage " + std::to_string(n) + " beyond cap " +
                                std::to_string(cap_));
  }
  return v[static_cast<std::size_t>(n)];
}

const Rat& Sequences::ratio(int n) const {
  if (n < 0 || n > cap_) {
    throw std::invalid_argument("stage " + std::to_string(n) + " beyond cap " +
                                std::to_string(cap_));
  }
  return ratio_[static_cast<std::size_t>(n)];
}

Int Sequences::group_order(int n) const {
  if (n < 0 || n > cap_) {
    throw std::invalid_argument("stage " + std::to_string(n) + " beyond cap " +
                                std::to_string(cap_));
  }
  return pow2(n);
}

Sequences derive_sequences(const Schedule& schedule, int cap) {
  return Sequences(schedule, cap);
}

bool ValidationReport::ok() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

ValidationReport validate_schedule(const Schedule& schedule, int cap) {
  ValidationReport report;

  {
    CheckLine line;
    line.name = "d(0) = 1";
    line.pass = schedule.d(0) == 1;
    report.checks.push_back(std::move(line));
  }
  {
    CheckLine line;
    line.name = "stages representable up to cap";
    const bool pass = cap >= 0 && cap <= schedule.max_stage();
    line.pass = pass;
    if (!pass) line.detail = "cap " + std::to_string(cap) + " not representable";
    report.checks.push_back(std::move(line));
    if (!pass) return report;
  }
  {
    CheckLine line;
    line.name = "d(n) > 2^(n-1) for n = 1.." + std::to_string(cap);
    line.pass = true;
    for (int n = 1; n <= cap; ++n) {
      if (schedule.d(n) <= pow2(n - 1)) {
        line.pass = false;
        line.first_fail_stage = n;
        line.detail = "d(" + std::to_string(n) + ") = " + schedule.d(n).str() +
                      " is not > " + pow2(n - 1).str();
        break;
      }
    }
    report.checks.push_back(std::move(line));
  }
  {
    CheckLine line;
    line.name = "kappa tail exactly summable";
    if (schedule.kind == Schedule::Kind::Geometric) {
      line.pass = schedule.base >= 3;  // geometric tail 2^N/(c g^N (g-2)) finite
      line.detail = "geometric, base " + schedule.base.str();
    } else {
      line.pass = true;
      line.detail = "explicit prefix: only the prefix infimum is available (non-certified)";
    }
    report.checks.push_back(std::move(line));
  }
  return report;
}

KappaInterval kappa_interval(const Schedule& schedule, int stage_used) {
  if (stage_used < 0) throw std::invalid_argument("kappa: stage_used must be >= 0");
  KappaInterval out;

  if (schedule.kind == Schedule::Kind::ExplicitPrefix) {
    const int cap = schedule.max_stage();
    Sequences seq(schedule, cap);
    out.stage_used = cap;
    out.hi = seq.ratio(cap);  // prefix infimum: ratio is strictly decreasing
    out.lo = out.hi;
    out.tail_bound = 0;
    out.certified = false;
    out.above_half = out.lo > Rat(1, 2);
    return out;
  }

  Sequences seq(schedule, stage_used);
  const Int& c = schedule.coeff;
  const Int& g = schedule.base;
  // sum_{j > N} 2^(j-1) / (c g^j) = 2^N / (c g^N (g - 2))
  const Rat tail(pow2(stage_used), c * pow(g, static_cast<unsigned>(stage_used)) * (g - 2));
  if (tail >= 1) {
    throw std::invalid_argument(
        "kappa interval not certifiable at stage_used = " + std::to_string(stage_used) +
        " (tail bound " + rat_to_string(tail) + " >= 1); raise stage_used");
  }
  out.stage_used = stage_used;
  out.hi = seq.ratio(stage_used);
  out.tail_bound = tail;
  out.lo = out.hi * (Rat(1) - tail);
  out.certified = true;
  out.above_half = out.lo > Rat(1, 2);
  return out;
}

}  // namespace ahcert
