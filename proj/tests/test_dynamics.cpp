#include "ahcert/dynamics.hpp"

#include <doctest.h>

using namespace ahcert;

namespace {

Sequences tiny235() { return Sequences(Schedule::explicit_prefix({2, 3, 5}), 3); }
Sequences tiny9() {
  return Sequences(Schedule::explicit_prefix({2, 3, 5, 9, 17, 33, 65, 129, 257}), 9);
}

}  // namespace

TEST_CASE("level permutations") {
  Sequences seq = tiny235();
  SUBCASE("level 1 is the identity (1-cycle)") {
    const LevelPermutation v1 = level_permutation(seq, 1);
    CHECK(v1.size() == 3);
    for (Int i = 1; i <= 3; ++i) CHECK(v1.slot_source(i) == i);
    CHECK(v1.order() == 1);
  }
  SUBCASE("level 2 swaps the last two of five") {
    const LevelPermutation v2 = level_permutation(seq, 2);
    CHECK(v2.size() == 5);
    CHECK(v2.slot_source(4) == 5);
    CHECK(v2.slot_source(5) == 4);
    CHECK(v2.slot_source(3) == 3);
    CHECK(v2.order() == 2);
  }
  SUBCASE("level 3 cycles the last four of nine") {
    const LevelPermutation v3 = level_permutation(seq, 3);
    CHECK(v3.size() == 9);
    CHECK(v3.slot_source(6) == 7);
    CHECK(v3.slot_source(7) == 8);
    CHECK(v3.slot_source(8) == 9);
    CHECK(v3.slot_source(9) == 6);
    CHECK(v3.order() == 4);
  }
  SUBCASE("basis image inverts slot source") {
    for (int level = 1; level <= 3; ++level) {
      const LevelPermutation v = level_permutation(seq, level);
      for (Int i = 1; i <= v.size(); ++i) {
        CHECK(v.slot_source(v.basis_image(i)) == i);
        CHECK(v.basis_image(v.slot_source(i)) == i);
      }
    }
  }
}

TEST_CASE("unitary orders") {
  Sequences seq = tiny9();
  CHECK(order_of_unitary(permutation_unitary(seq, 1)) == 1);
  CHECK(order_of_unitary(permutation_unitary(seq, 3)) == 4);   // lcm(1, 2, 4)
  CHECK(order_of_unitary(permutation_unitary(seq, 5)) == 16);  // lcm(1, 2, 4, 8, 16)
  for (int n = 1; n <= 9; ++n) {
    const Int order = order_of_unitary(permutation_unitary(seq, n));
    CHECK(pow2(n - 1) % order == 0);  // divides 2^(n-1), hence 2^n with the shift
  }
}

TEST_CASE("intertwining verifies symbolically") {
  SUBCASE("degenerate stage") {
    Sequences seq = tiny235();
    const IntertwineReport r = verify_intertwine(seq, 0);
    CHECK(r.ok());
    CHECK(r.slots == 3);
  }
  SUBCASE("all stages of both test schedules") {
    Sequences t9 = tiny9();
    for (int n = 0; n <= 8; ++n) {
      const IntertwineReport r = verify_intertwine(t9, n);
      CHECK(r.ok());
      CHECK(r.slots == to_i64(t9.l(n + 1)));
    }
    Sequences ten(Schedule::geometric(1, 10), 4);
    for (int n = 0; n <= 3; ++n) CHECK(verify_intertwine(ten, n).ok());
  }
  SUBCASE("serial and parallel sweeps agree") {
    Sequences ten(Schedule::geometric(1, 10), 5);
    for (int n = 0; n <= 4; ++n) {
      const auto a = verify_intertwine(ten, n, Exec::Parallel);
      const auto b = verify_intertwine(ten, n, Exec::Serial);
      CHECK(a.ok() == b.ok());
      CHECK(a.slots == b.slots);
      CHECK(a.first_mismatch == b.first_mismatch);
    }
  }
  SUBCASE("explicit map route agrees with the structural route") {
    Sequences seq = tiny9();
    for (int n = 0; n <= 3; ++n) {
      CHECK(verify_intertwine_map(connecting_map(seq, n), seq).ok());
    }
  }
}

TEST_CASE("every single-slot mutation is detected at its stage") {
  Sequences seq = tiny9();
  for (int n = 0; n <= 3; ++n) {
    const ConnectingMap original = connecting_map(seq, n);
    const std::int64_t slots = static_cast<std::int64_t>(original.paths.size());
    const std::int64_t d = to_i64(seq.d(n + 1));
    const std::int64_t evals = to_i64(seq.group_order(n));

    // all alternative slot contents
    std::vector<EigenvalueMap> alternatives;
    for (std::int64_t j = 1; j <= d; ++j) {
      alternatives.push_back({EigenvalueMap::Kind::CoordProj, n + 1, j});
    }
    for (std::int64_t e = 0; e < evals; ++e) {
      alternatives.push_back({EigenvalueMap::Kind::PointEval, n + 1, e});
    }

    int mutations = 0;
    for (std::int64_t slot = 0; slot < slots; ++slot) {
      for (const EigenvalueMap& alt : alternatives) {
        if (alt == original.paths[static_cast<std::size_t>(slot)][0]) continue;
        ConnectingMap mutated = original;
        mutated.paths[static_cast<std::size_t>(slot)][0] = alt;
        const IntertwineReport r = verify_intertwine_map(mutated, seq);
        CHECK_FALSE(r.ok());
        ++mutations;
      }
    }
    CHECK(mutations == slots * (slots - 1));

    // pair swaps with distinct content change two slots and must also fail
    for (std::int64_t a = 0; a < slots; ++a) {
      for (std::int64_t b = a + 1; b < slots; ++b) {
        ConnectingMap swapped = original;
        std::swap(swapped.paths[static_cast<std::size_t>(a)],
                  swapped.paths[static_cast<std::size_t>(b)]);
        CHECK_FALSE(verify_intertwine_map(swapped, seq).ok());
      }
    }
  }
}

TEST_CASE("numerical spot check") {
  SUBCASE("unmutated maps evaluate to exactly zero deviation") {
    Sequences seq = tiny235();
    for (int n = 0; n <= 2; ++n) {
      CHECK(spot_check_intertwine(seq, n, 1234, 20) == 0.0);
    }
    Sequences ten(Schedule::geometric(1, 10), 2);
    CHECK(spot_check_intertwine(ten, 1, 77, 10) == 0.0);  // r(2) = 1122 within guard
  }
  SUBCASE("dense guard") {
    Sequences ten(Schedule::geometric(1, 10), 3);
    CHECK_THROWS_WITH_AS(spot_check_intertwine(ten, 2, 1, 5),
                         doctest::Contains("verify_intertwine"), std::invalid_argument);
  }
  SUBCASE("swapping two point evaluations produces a visible deviation") {
    Sequences seq = tiny235();
    ConnectingMap mutated = connecting_map(seq, 2);  // slots 6..9 are evaluations
    std::swap(mutated.paths[5], mutated.paths[7]);
    CHECK(spot_check_intertwine_map(mutated, seq, 99, 20) > 1e-3);
  }
}

TEST_CASE("built automorphisms carry the expected factor data") {
  Sequences seq = tiny235();
  for (int n = 0; n <= 3; ++n) {
    const OdometerAutomorphism alpha = build_automorphism(seq, n);
    CHECK(alpha.stage == n);
    REQUIRE(alpha.unitary.factors.size() == static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) {
      const LevelPermutation& v = alpha.unitary.factors[static_cast<std::size_t>(j - 1)];
      CHECK(v.level == j);
      CHECK(v.fixed == seq.d(j));
      CHECK(v.cycle == pow2(j - 1));
      CHECK(v.size() == seq.l(j));
    }
  }
  CHECK_THROWS_AS(build_automorphism(seq, 4), std::invalid_argument);
}

TEST_CASE("towers") {
  SUBCASE("two-element odometer") {
    Sequences seq = tiny235();
    const RokhlinTower t1 = rokhlin_tower(seq, 1);
    REQUIRE(t1.elements.size() == 2);
    CHECK(t1.elements[0] == 0);
    CHECK(t1.elements[1] == 1);
    CHECK(verify_tower(t1, seq).ok());
    CHECK(verify_tower(t1, build_automorphism(seq, 1), seq).ok());
    CHECK_THROWS_AS(verify_tower(t1, build_automorphism(seq, 2), seq), std::invalid_argument);
  }
  SUBCASE("length-8 tower shifts exactly") {
    Sequences seq = tiny235();
    const RokhlinTower t3 = rokhlin_tower(seq, 3);
    CHECK(t3.elements.size() == 8);
    const TowerReport rep = verify_tower(t3, seq);
    CHECK(rep.ok());
    CHECK(rep.epsilon == 0.0);
    CHECK(rep.length == 8);
  }
  SUBCASE("tower length requirement picks the stage") {
    CHECK(tower_stage_for_length(100) == 7);  // 2^7 = 128 >= 100
    CHECK(tower_stage_for_length(1) == 0);
    CHECK(tower_stage_for_length(128) == 7);
    CHECK(tower_stage_for_length(129) == 8);
  }
  SUBCASE("a scrambled tower fails the shift check") {
    Sequences seq = tiny235();
    RokhlinTower bad = rokhlin_tower(seq, 2);
    std::swap(bad.elements[1], bad.elements[2]);
    CHECK_FALSE(verify_tower(bad, seq).ok());
  }
  SUBCASE("a repeated element fails the partition check") {
    Sequences seq = tiny235();
    RokhlinTower bad = rokhlin_tower(seq, 2);
    bad.elements[1] = bad.elements[0];
    const TowerReport rep = verify_tower(bad, seq);
    CHECK_FALSE(rep.partition_ok);
  }
}
