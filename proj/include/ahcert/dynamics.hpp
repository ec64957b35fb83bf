#pragma once

#include "ahcert/sampling.hpp"
#include "ahcert/schedule.hpp"
#include "ahcert/system.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ahcert {

/// Level factor of the odometer unitary: identity on the first d(level)
/// indices, one cycle on the trailing 2^(level-1).
struct LevelPermutation {
  int level = 0;
  Int fixed;  // d(level)
  Int cycle;  // 2^(level-1)

  Int size() const { return fixed + cycle; }
  /// Slot i of a diagonal conjugated by this level's unitary reads the entry
  /// previously at slot_source(i): fixed+j -> fixed+j+1, last -> fixed+1.
  Int slot_source(const Int& slot) const;
  /// Action on basis vectors (the inverse of slot_source).
  Int basis_image(const Int& basis) const;
  Int order() const { return cycle >= 2 ? cycle : Int(1); }
};

LevelPermutation level_permutation(const Sequences& seq, int level);

/// Tensor product of the level factors; acts on r(n) indices factorwise and
/// is never materialized densely except under the spot-check size guard.
struct PermutationUnitary {
  int stage = 0;
  std::vector<LevelPermutation> factors;  // levels 1..stage
};

PermutationUnitary permutation_unitary(const Sequences& seq, int n);
Int order_of_unitary(const PermutationUnitary& u);

/// alpha_n: conjugation by the unitary composed with the +1 group shift.
struct OdometerAutomorphism {
  int stage = 0;
  PermutationUnitary unitary;
};

OdometerAutomorphism build_automorphism(const Sequences& seq, int n);

/// Slot-by-slot verification that conjugating the level-(n+1) diagonal by
/// the cycle factor and shifting the stage-(n+1) group coordinate equals
/// applying the stage-n automorphism inside every slot: coordinate slots
/// stay fixed with the quotient-of-shift annotation (checked exhaustively
/// over Z_{2^(n+1)}), point-evaluation slots rotate by exactly one step.
struct IntertwineReport {
  int n = 0;
  std::int64_t slots = 0;
  bool layout_ok = true;
  bool quotient_shift_ok = true;
  bool slots_ok = true;
  bool unitary_consistent = true;
  std::int64_t first_mismatch = -1;  // 1-based slot, -1 when none
  std::string detail;
  bool ok() const { return layout_ok && quotient_shift_ok && slots_ok && unitary_consistent; }
};

/// Structural check against the generated map layout (no materialization;
/// handles l(n+1) in the billions).
IntertwineReport verify_intertwine(const Sequences& seq, int n, Exec exec = Exec::Parallel);
/// Same check against an explicit single-level map (mutation testing entry).
IntertwineReport verify_intertwine_map(const ConnectingMap& map, const Sequences& seq,
                                       Exec exec = Exec::Parallel);

/// Numerical cross-check of the same identity on random matrix-valued
/// functions and random points; both sides are assembled independently and
/// compared in Frobenius norm (which dominates the operator norm).
/// Refuses when r(n+1) exceeds the dense guard.
double spot_check_intertwine(const Sequences& seq, int n, std::uint64_t seed, int samples,
                             std::int64_t dense_guard = 2000);
double spot_check_intertwine_map(const ConnectingMap& map, const Sequences& seq,
                                 std::uint64_t seed, int samples,
                                 std::int64_t dense_guard = 2000);

/// Tower of 2^n indicator projections of the group coordinate, enumerated so
/// that the automorphism maps slot k exactly onto slot k+1 (mod 2^n).
struct RokhlinTower {
  int stage = 0;
  std::vector<std::int64_t> elements;  // group element carried by tower slot k
};

RokhlinTower rokhlin_tower(const Sequences& seq, int n);

/// Smallest n with 2^n >= min_length.
int tower_stage_for_length(const Int& min_length);

struct TowerReport {
  int n = 0;
  Int length;
  bool partition_ok = false;  // sum p_k = 1
  bool shift_ok = false;      // alpha(p_k) = p_{k+1 mod 2^n}, exactly
  bool central_ok = false;    // scalar blocks: commute with everything
  double epsilon = 0.0;       // achieved; the approximate conditions hold with 0
  std::string detail;
  bool ok() const { return partition_ok && shift_ok && central_ok; }
};

TowerReport verify_tower(const RokhlinTower& tower, const Sequences& seq);
/// Same verification against an explicit automorphism (stages must agree).
TowerReport verify_tower(const RokhlinTower& tower, const OdometerAutomorphism& alpha,
                         const Sequences& seq);

}  // namespace ahcert
