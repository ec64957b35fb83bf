// Property-style checks over generated schedules: the structural invariants
// must hold for any valid schedule, not just the bundled ones.

#include "ahcert/dynamics.hpp"
#include "ahcert/schedule.hpp"
#include "ahcert/system.hpp"

#include <doctest.h>

using namespace ahcert;

namespace {

// deterministic stream of valid tiny schedules: d(n) > 2^(n-1), caps small
// enough that explicit path enumeration stays cheap
std::vector<Schedule> generated_schedules(int count, std::uint64_t seed) {
  std::vector<Schedule> out;
  std::uint64_t state = seed;
  while (static_cast<int>(out.size()) < count) {
    std::vector<Int> d;
    for (int n = 1; n <= 4; ++n) {
      const std::int64_t floor_n = to_i64(pow2(n - 1));
      d.push_back(floor_n + 1 + static_cast<std::int64_t>(splitmix64(state) % 6));
    }
    out.push_back(Schedule::explicit_prefix(std::move(d)));
  }
  return out;
}

}  // namespace

TEST_CASE("generated schedules: layout, intertwining, towers") {
  for (const Schedule& schedule : generated_schedules(20, 0xA11CE)) {
    CAPTURE(schedule.describe());
    REQUIRE(validate_schedule(schedule, 4).ok());
    Sequences seq(schedule, 4);
    for (int n = 0; n <= 3; ++n) {
      CHECK(single_level_layout_ok(connecting_map(seq, n), seq));
      CHECK(verify_intertwine(seq, n).ok());
      CHECK(verify_intertwine(seq, n, Exec::Serial).ok());
    }
    for (int n = 1; n <= 4; ++n) {
      CHECK(verify_tower(rokhlin_tower(seq, n), seq).ok());
      CHECK(pow2(n) % order_of_unitary(permutation_unitary(seq, n)) == 0);
    }
  }
}

TEST_CASE("generated schedules: line-class decomposition up to stage 4") {
  for (const Schedule& schedule : generated_schedules(12, 0xB0B)) {
    CAPTURE(schedule.describe());
    Sequences seq(schedule, 4);
    ProjectionClass cls = bott_class();
    for (int m = 1; m <= 4; ++m) {
      cls = push_class(cls, connecting_map(seq, m - 1), seq);
      CHECK(cls.component_uniform());
      CHECK(cls.lines_distinct());
      const auto summary = summarize_uniform(cls);
      REQUIRE(summary.has_value());
      CHECK(summary->line_block == seq.s(m));
      CHECK(summary->trivial == seq.r(m) - seq.s(m));
      // the closed-form route must match the explicit one exactly
      const UniformClassSummary closed = push_summary(UniformClassSummary{0, 1, 0}, seq, m);
      CHECK(closed.line_block == summary->line_block);
      CHECK(closed.trivial == summary->trivial);
      // unital trace invariance
      CHECK(trace_of_class(cls, seq) == 1);
    }
  }
}

TEST_CASE("generated geometric schedules: enclosure brackets every ratio") {
  std::uint64_t state = 0xCAFE;
  for (int trial = 0; trial < 12; ++trial) {
    const Int c = 1 + static_cast<std::int64_t>(splitmix64(state) % 3);
    const Int g = 3 + static_cast<std::int64_t>(splitmix64(state) % 10);
    const int used = 1 + static_cast<int>(splitmix64(state) % 4);
    const Schedule schedule = Schedule::geometric(c, g);
    CAPTURE(schedule.describe());

    KappaInterval k;
    try {
      k = kappa_interval(schedule, used);
    } catch (const std::invalid_argument&) {
      // tail >= 1 at this stage; certifiable later instead
      CHECK(kappa_interval(schedule, used + 4).certified);
      continue;
    }
    CHECK(k.lo <= k.hi);
    CHECK(k.tail_bound < 1);
    Sequences seq(schedule, 2 * used + 2);
    for (int m = 0; m <= 2 * used; ++m) CHECK(k.lo <= seq.ratio(m));
    for (int m = used; m <= 2 * used; ++m) CHECK(k.hi >= seq.ratio(m));
  }
}

TEST_CASE("mismatch reports name the first differing slot") {
  Sequences seq(Schedule::explicit_prefix({2, 3, 5}), 3);
  ConnectingMap mutated = connecting_map(seq, 2);  // 9 slots
  mutated.paths[6][0] = EigenvalueMap{EigenvalueMap::Kind::PointEval, 3, 3};  // slot 7
  const IntertwineReport rep = verify_intertwine_map(mutated, seq);
  CHECK_FALSE(rep.ok());
  CHECK(rep.first_mismatch >= 1);
  CHECK(rep.first_mismatch <= 7);
  CHECK(rep.detail.find("slot") != std::string::npos);
}
