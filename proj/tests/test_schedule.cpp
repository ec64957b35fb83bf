#include "ahcert/schedule.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace ahcert;

namespace {
Schedule ten() { return Schedule::geometric(1, 10); }
}  // namespace

TEST_CASE("derived sequences, geometric d(n) = 10^n") {
  Sequences seq(ten(), 3);
  CHECK(seq.d(0) == 1);
  CHECK(seq.l(0) == 1);
  CHECK(seq.l(1) == 11);
  CHECK(seq.l(2) == 102);
  CHECK(seq.l(3) == 1004);
  CHECK(seq.r(3) == 1126488);
  CHECK(seq.s(3) == Int("1000000"));
  CHECK(seq.ratio(1) == Rat(10, 11));
}

TEST_CASE("derived sequences, explicit d = (2,3,5)") {
  Sequences seq(Schedule::explicit_prefix({2, 3, 5}), 3);
  CHECK(seq.l(0) == 1);
  CHECK(seq.l(1) == 3);
  CHECK(seq.l(2) == 5);
  CHECK(seq.l(3) == 9);
  CHECK(seq.r(0) == 1);
  CHECK(seq.r(1) == 3);
  CHECK(seq.r(2) == 15);
  CHECK(seq.r(3) == 135);
  CHECK(seq.s(1) == 2);
  CHECK(seq.s(2) == 6);
  CHECK(seq.s(3) == 30);
}

TEST_CASE("validation report") {
  CHECK(validate_schedule(ten(), 10).ok());

  const auto bad = validate_schedule(Schedule::explicit_prefix({2, 3, 4}), 3);
  CHECK_FALSE(bad.ok());
  bool found = false;
  for (const auto& line : bad.checks) {
    if (!line.pass && line.first_fail_stage) {
      CHECK(*line.first_fail_stage == 3);  // 4 = 2^2, not > 2^2
      found = true;
    }
  }
  CHECK(found);

  const auto one = validate_schedule(Schedule::explicit_prefix({1, 5}), 2);
  CHECK_FALSE(one.ok());
  for (const auto& line : one.checks) {
    if (!line.pass && line.first_fail_stage) CHECK(*line.first_fail_stage == 1);
  }

  CHECK_THROWS_WITH_AS(derive_sequences(Schedule::explicit_prefix({2, 3, 4}), 3),
                       doctest::Contains("stage 3"), std::invalid_argument);
}

TEST_CASE("schedule constructors reject bad parameters") {
  CHECK_THROWS_AS(Schedule::geometric(0, 10), std::invalid_argument);
  CHECK_THROWS_AS(Schedule::geometric(1, 2), std::invalid_argument);
  CHECK_THROWS_AS(Schedule::explicit_prefix({2, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Sequences(Schedule::explicit_prefix({2, 3}), 5), std::invalid_argument);
}

TEST_CASE("kappa interval, d(n) = 10^n") {
  SUBCASE("stage_used = 6") {
    const KappaInterval k = kappa_interval(ten(), 6);
    CHECK(k.certified);
    CHECK(k.tail_bound == Rat(1, 125000));  // 2^6 / (10^6 * 8)
    CHECK(k.hi == oracles::partial_ratio_product(ten(), 6));
    CHECK(k.lo == k.hi * Rat(124999, 125000));
    CHECK(k.above_half);
    CHECK(k.hi - k.lo < Rat(1, 10000));

    // the 40-term product approximates kappa to ~1e-29 and must be enclosed
    const Rat reference = oracles::partial_ratio_product(ten(), 40);
    CHECK(k.lo <= reference);
    CHECK(reference <= k.hi);

    const double lo = static_cast<double>(k.lo), hi = static_cast<double>(k.hi);
    CHECK(lo > 0.88682);
    CHECK(hi < 0.88684);
  }
  SUBCASE("stage_used = 1") {
    const KappaInterval k = kappa_interval(ten(), 1);
    CHECK(k.hi == Rat(10, 11));
    CHECK(k.tail_bound == Rat(1, 40));
    CHECK(k.lo == Rat(39, 44));
    // the closed-form tail dominates any truncation of the true tail
    CHECK(oracles::truncated_tail(ten(), 1, 30) < k.tail_bound);
  }
  SUBCASE("stage_used = 0 (empty product)") {
    const KappaInterval k = kappa_interval(ten(), 0);
    CHECK(k.hi == 1);
    CHECK(k.tail_bound == Rat(1, 8));
    CHECK(k.lo == Rat(7, 8));
  }
}

TEST_CASE("kappa interval edge cases") {
  // base 3 at stage 0: tail = 1, not certifiable
  CHECK_THROWS_WITH_AS(kappa_interval(Schedule::geometric(1, 3), 0),
                       doctest::Contains("raise stage_used"), std::invalid_argument);
  // ...but certifiable one stage later, with a kappa below 1/2
  const KappaInterval k3 = kappa_interval(Schedule::geometric(1, 3), 4);
  CHECK(k3.certified);
  CHECK_FALSE(k3.above_half);

  const KappaInterval ke = kappa_interval(Schedule::explicit_prefix({2, 3, 5}), 3);
  CHECK_FALSE(ke.certified);
  CHECK(ke.lo == ke.hi);
  CHECK(ke.hi == Rat(30, 135));
}

TEST_CASE("ratio recursion and strict decrease") {
  for (const Schedule& schedule :
       {ten(), Schedule::geometric(2, 5), Schedule::explicit_prefix({2, 3, 5, 9, 17})}) {
    const int cap = schedule.kind == Schedule::Kind::Geometric ? 8 : schedule.max_stage();
    Sequences seq(schedule, cap);
    for (int n = 0; n + 1 <= cap; ++n) {
      CHECK(seq.ratio(n + 1) == seq.ratio(n) * Rat(seq.d(n + 1), seq.l(n + 1)));
      CHECK(seq.ratio(n + 1) < seq.ratio(n));
    }
  }
}

TEST_CASE("product routes agree bit for bit") {
  Sequences seq(ten(), 8);
  Int r = 1, s = 1;
  for (int n = 0; n <= 8; ++n) {
    r *= seq.l(n);
    s *= seq.d(n);
    CHECK(r == seq.r(n));
    CHECK(s == seq.s(n));
  }
}

TEST_CASE("interval brackets the ratio tail and head") {
  const int used = 4;
  const KappaInterval k = kappa_interval(ten(), used);
  Sequences seq(ten(), 2 * used);
  for (int m = 0; m <= 2 * used; ++m) CHECK(k.lo <= seq.ratio(m));
  for (int m = used; m <= 2 * used; ++m) CHECK(k.hi >= seq.ratio(m));
}
