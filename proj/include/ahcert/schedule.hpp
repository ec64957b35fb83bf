#pragma once

#include "ahcert/numeric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ahcert {

/// The integer data driving the whole construction. Two kinds are supported:
/// a closed-form geometric schedule d(n) = c * g^n (n >= 1, c >= 1, g >= 3),
/// for which the kappa tail sum is exactly summable, and an explicit finite
/// prefix d(1..N). In both kinds d(0) = 1.
struct Schedule {
  enum class Kind { Geometric, ExplicitPrefix };

  Kind kind = Kind::Geometric;
  Int coeff = 1;             // geometric: c
  Int base = 10;             // geometric: g
  std::vector<Int> prefix;   // explicit: d(1..N)

  static Schedule geometric(Int c, Int g);
  static Schedule explicit_prefix(std::vector<Int> d);

  Int d(int n) const;        // d(0) = 1 always
  /// Largest stage the schedule can represent (INT_MAX for geometric).
  int max_stage() const;
  std::string describe() const;
};

/// l(n) = d(n) + 2^(n-1) for n >= 1, l(0) = 1;
/// r(n) = prod_{j<=n} l(j); s(n) = prod_{j<=n} d(j); ratio(n) = s(n)/r(n).
/// Construction validates d(n) > 2^(n-1) stage by stage and verifies that
/// ratio is strictly decreasing, all in exact arithmetic.
class Sequences {
 public:
  Sequences(Schedule schedule, int cap);

  int cap() const { return cap_; }
  const Schedule& schedule() const { return schedule_; }

  const Int& d(int n) const { return at(d_, n); }
  const Int& l(int n) const { return at(l_, n); }
  const Int& r(int n) const { return at(r_, n); }
  const Int& s(int n) const { return at(s_, n); }
  const Rat& ratio(int n) const;
  Int group_order(int n) const;  // 2^n

 private:
  const Int& at(const std::vector<Int>& v, int n) const;

  Schedule schedule_;
  int cap_ = 0;
  std::vector<Int> d_, l_, r_, s_;
  std::vector<Rat> ratio_;
};

Sequences derive_sequences(const Schedule& schedule, int cap);

struct CheckLine {
  std::string name;
  bool pass = false;
  std::optional<int> first_fail_stage;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckLine> checks;
  bool ok() const;
};

/// Non-throwing validity report over stages 1..cap.
ValidationReport validate_schedule(const Schedule& schedule, int cap);

/// Two-sided enclosure of kappa = inf_n ratio(n).
/// hi = ratio(stage_used); lo = hi * (1 - tail) with
/// tail = sum_{j>stage_used} 2^(j-1)/d(j), exact for geometric schedules,
/// using 1/(1+x) >= 1-x termwise. Explicit prefixes only yield the prefix
/// infimum and are flagged non-certified.
struct KappaInterval {
  Rat lo, hi;
  int stage_used = 0;
  Rat tail_bound;
  bool certified = false;
  bool above_half = false;  // lo > 1/2, the construction's standing assumption
};

KappaInterval kappa_interval(const Schedule& schedule, int stage_used);

}  // namespace ahcert
