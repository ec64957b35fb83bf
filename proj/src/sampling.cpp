#include "ahcert/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ahcert {

namespace {

double halton(std::int64_t index, int base) {
  double f = 1.0, out = 0.0;
  for (std::int64_t i = index; i > 0; i /= base) {
    f /= base;
    out += f * static_cast<double>(i % base);
  }
  return out;
}

double frac(double x) { return x - std::floor(x); }

Vec3 normalized(Vec3 v) {
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / n, v[1] / n, v[2] / n};
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// total sphere coordinates consumed by stages 0..m-1
Int scheme_offset(const Sequences& seq, int m) {
  Int off = 0;
  for (int t = 0; t < m; ++t) off += seq.s(t);
  return off;
}

}  // namespace

Vec3 sphere_from_uv(double u, double v) {
  const double z = 1.0 - 2.0 * u;
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double phi = 2.0 * std::numbers::pi * v;
  return normalized({r * std::cos(phi), r * std::sin(phi), z});
}

double geodesic(const Vec3& a, const Vec3& b) {
  return std::acos(std::clamp(dot(a, b), -1.0, 1.0));
}

std::vector<Vec3> scheme_point(const PointScheme& scheme, const Sequences& seq, int m,
                               std::int64_t coord_guard) {
  if (m < 0 || m > seq.cap()) throw std::invalid_argument("scheme_point: stage out of range");
  const Int end = scheme_offset(seq, m) + seq.s(m);
  if (end > coord_guard) {
    throw std::invalid_argument("scheme_point: stage " + std::to_string(m) + " needs " +
                                end.str() + " coordinates, over guard " +
                                std::to_string(coord_guard));
  }
  const std::int64_t off = to_i64(scheme_offset(seq, m));
  const std::int64_t count = to_i64(seq.s(m));

  std::uint64_t s = scheme.seed;
  const double rot_u = unit_double(splitmix64(s));
  const double rot_v = unit_double(splitmix64(s));

  std::vector<Vec3> out(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    const std::int64_t t = off + i + 1;  // skip the degenerate index 0
    out[static_cast<std::size_t>(i)] =
        sphere_from_uv(frac(halton(t, 2) + rot_u), frac(halton(t, 3) + rot_v));
  }
  return out;
}

namespace {

// flattened evaluation set: each block is s(target) consecutive unit vectors
struct EvalSet {
  std::vector<Vec3> coords;
  std::int64_t block_len = 1;
  std::int64_t blocks = 0;
};

EvalSet build_eval_set(const PointScheme& scheme, const Sequences& seq, int target_stage,
                       int cutoff, std::int64_t coord_guard) {
  EvalSet set;
  set.block_len = to_i64(seq.s(target_stage));
  Int total = 0;
  for (int m = target_stage + 1; m <= cutoff; ++m) total += seq.s(m);
  if (total > coord_guard) {
    throw std::invalid_argument("density: evaluation set needs " + total.str() +
                                " coordinates, over guard " + std::to_string(coord_guard));
  }
  for (int m = target_stage + 1; m <= cutoff; ++m) {
    std::vector<Vec3> xm = scheme_point(scheme, seq, m, coord_guard);
    set.blocks += static_cast<std::int64_t>(xm.size()) / set.block_len;
    set.coords.insert(set.coords.end(), xm.begin(), xm.end());
  }
  return set;
}

// min over samples of (max over blocks of (min over coords of dot)); the
// covering radius estimate is acos of that value.
double sweep_min_best_dot(const EvalSet& set, std::int64_t block_len, int samples,
                          std::uint64_t sample_seed, bool parallel) {
  double global_min = 1.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(min : global_min) if (parallel)
#endif
  for (int t = 0; t < samples; ++t) {
    std::uint64_t state = mix_seed(sample_seed, static_cast<std::uint64_t>(t));
    std::vector<Vec3> y(static_cast<std::size_t>(block_len));
    for (auto& v : y) {
      const double u = unit_double(splitmix64(state));
      const double w = unit_double(splitmix64(state));
      v = sphere_from_uv(u, w);
    }
    double best = -1.0;  // max over blocks
    const std::int64_t nblocks = static_cast<std::int64_t>(set.coords.size()) / block_len;
    for (std::int64_t b = 0; b < nblocks; ++b) {
      double worst = 1.0;  // min dot over coordinates = sup metric in dot space
      const Vec3* block = set.coords.data() + b * block_len;
      for (std::int64_t c = 0; c < block_len; ++c) {
        worst = std::min(worst, dot(y[static_cast<std::size_t>(c)], block[c]));
      }
      best = std::max(best, worst);
    }
    global_min = std::min(global_min, best);
  }
  return global_min;
}

}  // namespace

DensityEstimate density_estimate(const PointScheme& scheme, const Sequences& seq,
                                 int target_stage, int cutoff, int samples,
                                 std::uint64_t sample_seed, Exec exec,
                                 std::int64_t coord_guard) {
  if (target_stage < 0 || target_stage > seq.cap()) {
    throw std::invalid_argument("density: target stage out of range");
  }
  if (cutoff > seq.cap()) throw std::invalid_argument("density: cutoff beyond cap");
  if (samples < 1) throw std::invalid_argument("density: need at least one sample");
  if (seq.s(target_stage) > 64) {
    throw std::invalid_argument("density: s(" + std::to_string(target_stage) + ") = " +
                                seq.s(target_stage).str() +
                                " too large for the floating-point embedding (guard 64)");
  }

  DensityEstimate est;
  est.samples = samples;
  const EvalSet set = build_eval_set(scheme, seq, target_stage, cutoff, coord_guard);
  est.eval_blocks = set.blocks;
  if (set.blocks == 0) {
    est.empty_set = true;
    est.covering_radius = std::numbers::pi;  // diameter sentinel
    return est;
  }
  const double min_best = sweep_min_best_dot(set, set.block_len, samples, sample_seed,
                                             exec == Exec::Parallel);
  est.covering_radius = std::acos(std::clamp(min_best, -1.0, 1.0));
  return est;
}

}  // namespace ahcert
