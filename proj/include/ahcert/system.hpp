#pragma once

#include "ahcert/schedule.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ahcert {

/// Descriptor of the stage-n building block: matrices of size r(n) over the
/// product of s(n) two-spheres crossed with Z_{2^n}. Derived on demand from
/// the sequences, never stored independently.
struct StageAlgebra {
  int n = 0;
  Int matrix_size;     // r(n)
  Int sphere_factors;  // s(n)
  Int group_order;     // 2^n
  std::string describe() const;
};

StageAlgebra stage_algebra(const Sequences& seq, int n);

/// One diagonal slot of a single-level connecting map. A CoordProj at level
/// L sends (x, k) to (block-j projection of x, k mod 2^(L-1)); a PointEval
/// sends (x, k) to (anchor point of stage L-1, element j).
struct EigenvalueMap {
  enum class Kind : std::uint8_t { CoordProj, PointEval };
  Kind kind = Kind::CoordProj;
  int level = 0;           // maps stage `level` down to stage `level - 1`
  std::int64_t index = 0;  // CoordProj: block 1..d(level); PointEval: element 0..2^(level-1)-1

  bool operator==(const EigenvalueMap&) const = default;
};

using Path = std::vector<EigenvalueMap>;

/// Ordered list of composite diagonal slots for a stage n -> m map.
/// Each path lists one eigenvalue map per level, outermost (level m) first;
/// the slot order is the diagonal order, which the dynamics layer permutes.
struct ConnectingMap {
  int from_stage = 0;
  int to_stage = 0;
  std::vector<Path> paths;
};

inline constexpr std::int64_t kDefaultPathGuard = 2'000'000;

ConnectingMap identity_map(int n);

/// The single-level map n -> n+1: d(n+1) coordinate projections (blocks in
/// order) followed by 2^n point evaluations (elements in order).
ConnectingMap connecting_map(const Sequences& seq, int n,
                             std::int64_t path_guard = kDefaultPathGuard);

/// Composite of `first` (n -> p) with `second` (p -> m), yielding n -> m.
ConnectingMap compose(const ConnectingMap& first, const ConnectingMap& second,
                      std::int64_t path_guard = kDefaultPathGuard);

/// Checks the generated layout of a single-level map: slot i <= d(n+1) must
/// be CoordProj(block i) and slot d(n+1)+1+e must be PointEval(e).
bool single_level_layout_ok(const ConnectingMap& map, const Sequences& seq,
                            std::string* why = nullptr);

// ---------------------------------------------------------------------------
// Formal projection classes over a stage
// ---------------------------------------------------------------------------

/// Per-component bundle data: multiset of line-bundle pullbacks (coordinate
/// -> multiplicity) plus a trivial summand rank.
struct ClassComponent {
  std::map<Int, Int> lines;
  Int trivial = 0;

  Int rank() const;
  bool operator==(const ClassComponent&) const = default;
};

struct ProjectionClass {
  int stage = 0;
  std::vector<ClassComponent> components;  // indexed by the group element, size 2^stage

  /// Common component rank; throws when components disagree (malformed class).
  Int rank_checked() const;
  bool component_uniform() const;
  /// True when every line multiplicity is exactly one in every component.
  bool lines_distinct() const;
  bool operator==(const ProjectionClass&) const = default;
};

/// Rank-one class of the line-bundle projection at stage 0.
ProjectionClass bott_class();
ProjectionClass trivial_class(int stage, const Int& rank);
ProjectionClass direct_sum(const ProjectionClass& a, const ProjectionClass& b);

/// Propagation along a connecting map. Per target component k': a CoordProj
/// slot re-indexes every line of the source (read at component k' reduced to
/// the source group) into its coordinate block; a PointEval slot freezes the
/// base point, so every atom read at the evaluation component becomes trivial
/// of the same rank. Component bookkeeping follows the quotient maps exactly.
ProjectionClass push_class(const ProjectionClass& cls, const ConnectingMap& map,
                           const Sequences& seq);

/// rank / r(stage); requires component-uniform rank.
Rat trace_of_class(const ProjectionClass& cls, const Sequences& seq);

/// Closed-form route for component-uniform classes whose lines fill an
/// initial block 1..line_block (the shape produced by pushing the stage-0
/// line class or a trivial class). Used where explicit path enumeration is
/// out of reach; cross-validated against push_class wherever both run.
struct UniformClassSummary {
  int stage = 0;
  Int line_block;  // lines at coordinates 1..line_block, each once (0 = none)
  Int trivial;
};

std::optional<UniformClassSummary> summarize_uniform(const ProjectionClass& cls);
UniformClassSummary push_summary(const UniformClassSummary& src, const Sequences& seq,
                                 int to_stage);
Rat trace_of_summary(const UniformClassSummary& s, const Sequences& seq);

}  // namespace ahcert
