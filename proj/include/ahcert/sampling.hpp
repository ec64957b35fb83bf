#pragma once

#include "ahcert/schedule.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace ahcert {

using Vec3 = std::array<double, 3>;

/// Deterministic seeded low-discrepancy scheme for the per-stage anchor
/// points: coordinate i of the stage-m point is the (offset_m + i)-th entry
/// of a Halton(2,3) sequence pushed to the sphere by the equal-area map,
/// with a seed-derived rotation. Stages consume the sequence progressively,
/// so the union over stages stays well spread.
struct PointScheme {
  std::uint64_t seed = 0;
};

inline constexpr std::int64_t kDefaultCoordGuard = 20'000'000;

/// The stage-m anchor point as s(m) unit vectors (unit within 2^-40 relative).
std::vector<Vec3> scheme_point(const PointScheme& scheme, const Sequences& seq, int m,
                               std::int64_t coord_guard = kDefaultCoordGuard);

/// Monte-Carlo covering-radius estimate for the evaluation set reachable at
/// `target_stage` from anchors of stages <= cutoff by composite coordinate
/// projections. Distance on (S^2)^s is the sup over coordinates of the
/// geodesic distance. Empty evaluation set (cutoff <= target_stage) yields
/// the diameter sentinel pi. Parallel execution derives one RNG stream per
/// sample from `sample_seed`, so the result is independent of scheduling.
struct DensityEstimate {
  double covering_radius = 0.0;  // radians
  std::int64_t eval_blocks = 0;
  std::int64_t samples = 0;
  bool empty_set = false;
};

DensityEstimate density_estimate(const PointScheme& scheme, const Sequences& seq,
                                 int target_stage, int cutoff, int samples,
                                 std::uint64_t sample_seed, Exec exec = Exec::Parallel,
                                 std::int64_t coord_guard = kDefaultCoordGuard);

/// Equal-area map [0,1)^2 -> S^2 (z = 1 - 2u, azimuth 2 pi v), renormalized.
Vec3 sphere_from_uv(double u, double v);

double geodesic(const Vec3& a, const Vec3& b);

}  // namespace ahcert
