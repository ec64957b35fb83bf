#include "ahcert/dynamics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace ahcert {

Int LevelPermutation::slot_source(const Int& slot) const {
  if (slot < 1 || slot > size()) throw std::invalid_argument("slot index out of range");
  if (slot <= fixed) return slot;
  const Int t = slot - fixed;
  return (t == cycle) ? Int(fixed + 1) : Int(slot + 1);
}

Int LevelPermutation::basis_image(const Int& basis) const {
  if (basis < 1 || basis > size()) throw std::invalid_argument("basis index out of range");
  if (basis <= fixed) return basis;
  const Int t = basis - fixed;
  return (t == 1) ? Int(fixed + cycle) : Int(basis - 1);
}

LevelPermutation level_permutation(const Sequences& seq, int level) {
  if (level < 1 || level > seq.cap()) {
    throw std::invalid_argument("level " + std::to_string(level) + " beyond cap");
  }
  return LevelPermutation{level, seq.d(level), pow2(level - 1)};
}

PermutationUnitary permutation_unitary(const Sequences& seq, int n) {
  if (n < 0 || n > seq.cap()) throw std::invalid_argument("stage beyond cap");
  PermutationUnitary u;
  u.stage = n;
  u.factors.reserve(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) u.factors.push_back(level_permutation(seq, j));
  return u;
}

Int order_of_unitary(const PermutationUnitary& u) {
  Int order = 1;
  for (const auto& f : u.factors) {
    const Int fo = f.order();
    order = order / gcd(order, fo) * fo;
  }
  return order;
}

OdometerAutomorphism build_automorphism(const Sequences& seq, int n) {
  return OdometerAutomorphism{n, permutation_unitary(seq, n)};
}

// ---------------------------------------------------------------------------
// intertwining
// ---------------------------------------------------------------------------

namespace {

struct SlotContent {
  EigenvalueMap::Kind kind;
  std::int64_t index;
};

// int64 fast path of LevelPermutation::slot_source for the sweep
inline std::int64_t slot_source_i64(std::int64_t slot, std::int64_t fixed, std::int64_t cycle) {
  if (slot <= fixed) return slot;
  return (slot - fixed == cycle) ? fixed + 1 : slot + 1;
}

// Both sides of the identity, slot by slot. The left side conjugates the
// diagonal by the level cycle and pre-composes the stage-(n+1) shift (a
// no-op on point evaluations, the quotient annotation on coordinate slots);
// the right side post-composes each slot with the stage-n automorphism.
template <class ContentFn>
IntertwineReport check_intertwine_core(const Sequences& seq, int n, ContentFn content,
                                       std::int64_t slot_count, bool parallel) {
  IntertwineReport rep;
  rep.n = n;
  rep.slots = slot_count;

  const std::int64_t d = to_i64(seq.d(n + 1));
  const std::int64_t evals = to_i64(seq.group_order(n));  // 2^n, the cycle length at level n+1
  const std::int64_t big_group = 2 * evals;               // 2^(n+1)

  if (slot_count != d + evals) {
    rep.layout_ok = false;
    rep.detail = "slot count " + std::to_string(slot_count) + " != l(n+1) = " +
                 std::to_string(d + evals);
    return rep;
  }

  {
    // u_{n+1} must extend u_n by exactly the level-(n+1) factor
    const PermutationUnitary un = permutation_unitary(seq, n);
    const PermutationUnitary un1 = permutation_unitary(seq, n + 1);
    bool consistent = un1.factors.size() == un.factors.size() + 1;
    for (std::size_t j = 0; consistent && j < un.factors.size(); ++j) {
      consistent = un.factors[j].fixed == un1.factors[j].fixed &&
                   un.factors[j].cycle == un1.factors[j].cycle;
    }
    if (consistent) {
      const LevelPermutation& top = un1.factors.back();
      consistent = top.level == n + 1 && top.fixed == seq.d(n + 1) && top.cycle == pow2(n);
    }
    rep.unitary_consistent = consistent;
  }

  // quotient of the shifted coordinate vs shift of the quotient, exhaustively
  for (std::int64_t k = 0; k < big_group; ++k) {
    const std::int64_t lhs = ((k + 1) % big_group) % evals;
    const std::int64_t rhs = (k % evals + 1) % evals;
    if (lhs != rhs) {
      rep.quotient_shift_ok = false;
      rep.detail = "quotient/shift mismatch at k = " + std::to_string(k);
      break;
    }
  }

  constexpr std::int64_t kNone = std::numeric_limits<std::int64_t>::max();
  std::int64_t first_layout = kNone;
  std::int64_t first_slot = kNone;

#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(min : first_layout, first_slot) \
    if (parallel)
#endif
  for (std::int64_t i = 1; i <= slot_count; ++i) {
    const SlotContent rhs = content(i);
    const SlotContent lhs = content(slot_source_i64(i, d, evals));

    const bool layout =
        (i <= d) ? (rhs.kind == EigenvalueMap::Kind::CoordProj && rhs.index == i)
                 : (rhs.kind == EigenvalueMap::Kind::PointEval && rhs.index == i - d - 1);
    if (!layout) first_layout = std::min(first_layout, i);

    bool match = lhs.kind == rhs.kind;
    if (match) {
      if (rhs.kind == EigenvalueMap::Kind::CoordProj) {
        match = lhs.index == rhs.index;  // annotation covered by the quotient check
      } else {
        match = lhs.index == (rhs.index + 1) % evals;
      }
    }
    if (!match) first_slot = std::min(first_slot, i);
  }

  if (first_layout != kNone) {
    rep.layout_ok = false;
    rep.first_mismatch = first_layout;
  }
  if (first_slot != kNone) {
    rep.slots_ok = false;
    rep.first_mismatch = (rep.first_mismatch < 0) ? first_slot
                                                  : std::min(rep.first_mismatch, first_slot);
  }
  if (rep.first_mismatch > 0 && rep.detail.empty()) {
    rep.detail = "first differing slot: " + std::to_string(rep.first_mismatch);
  }
  return rep;
}

SlotContent structural_content(std::int64_t slot, std::int64_t d) {
  if (slot <= d) return {EigenvalueMap::Kind::CoordProj, slot};
  return {EigenvalueMap::Kind::PointEval, slot - d - 1};
}

}  // namespace

IntertwineReport verify_intertwine(const Sequences& seq, int n, Exec exec) {
  if (n < 0 || n + 1 > seq.cap()) throw std::invalid_argument("verify_intertwine: stage beyond cap");
  const std::int64_t d = to_i64(seq.d(n + 1));
  const std::int64_t slots = to_i64(seq.l(n + 1));
  return check_intertwine_core(
      seq, n, [d](std::int64_t i) { return structural_content(i, d); }, slots,
      exec == Exec::Parallel);
}

IntertwineReport verify_intertwine_map(const ConnectingMap& map, const Sequences& seq,
                                       Exec exec) {
  if (map.to_stage != map.from_stage + 1) {
    throw std::invalid_argument("verify_intertwine_map: expects a single-level map");
  }
  const int n = map.from_stage;
  if (n + 1 > seq.cap()) throw std::invalid_argument("verify_intertwine_map: stage beyond cap");
  for (const Path& p : map.paths) {
    if (p.size() != 1) throw std::invalid_argument("verify_intertwine_map: composite path");
  }
  const auto* paths = map.paths.data();
  return check_intertwine_core(
      seq, n,
      [paths](std::int64_t i) {
        const EigenvalueMap& e = paths[i - 1][0];
        return SlotContent{e.kind, e.index};
      },
      static_cast<std::int64_t>(map.paths.size()), exec == Exec::Parallel);
}

// ---------------------------------------------------------------------------
// numerical spot check
// ---------------------------------------------------------------------------

namespace {

std::vector<std::int64_t> dense_basis_permutation(const PermutationUnitary& u,
                                                  const Sequences& seq) {
  const std::int64_t size = to_i64(seq.r(u.stage));
  std::vector<std::int64_t> radices;
  radices.reserve(u.factors.size());
  for (const auto& f : u.factors) radices.push_back(to_i64(f.size()));

  std::vector<std::int64_t> perm(static_cast<std::size_t>(size));
  std::vector<std::int64_t> digits(radices.size());
  for (std::int64_t a = 0; a < size; ++a) {
    std::int64_t rest = a;  // mixed radix, level 1 most significant
    for (std::size_t j = radices.size(); j-- > 0;) {
      digits[j] = rest % radices[j];
      rest /= radices[j];
    }
    std::int64_t image = 0;
    for (std::size_t j = 0; j < radices.size(); ++j) {
      const std::int64_t img = to_i64(u.factors[j].basis_image(Int(digits[j] + 1))) - 1;
      image = image * radices[j] + img;
    }
    perm[static_cast<std::size_t>(a)] = image;
  }
  return perm;
}

// f(y, t) = A_t + <weights, y> B_t: a concrete matrix-valued function that
// can be evaluated anywhere, drawn deterministically per sample.
struct SampledFunction {
  std::vector<Eigen::MatrixXd> flat;    // per group element t: A_t
  std::vector<Eigen::MatrixXd> scaled;  // per group element t: B_t
  std::vector<Vec3> weights;            // one per sphere coordinate of X_n

  Eigen::MatrixXd eval(const Vec3* y, std::int64_t t) const {
    double g = 0.0;
    for (std::size_t c = 0; c < weights.size(); ++c) {
      g += weights[c][0] * y[c][0] + weights[c][1] * y[c][1] + weights[c][2] * y[c][2];
    }
    return flat[static_cast<std::size_t>(t)] + g * scaled[static_cast<std::size_t>(t)];
  }
};

template <class ContentFn>
double spot_check_core(const Sequences& seq, int n, ContentFn content, std::uint64_t seed,
                       int samples, std::int64_t dense_guard) {
  if (n < 0 || n + 1 > seq.cap()) throw std::invalid_argument("spot check: stage beyond cap");
  if (seq.r(n + 1) > dense_guard) {
    throw std::invalid_argument("spot check refused: r(" + std::to_string(n + 1) + ") = " +
                                seq.r(n + 1).str() + " exceeds dense guard " +
                                std::to_string(dense_guard) +
                                "; use verify_intertwine instead");
  }
  const std::int64_t R = to_i64(seq.r(n));
  const std::int64_t L = to_i64(seq.l(n + 1));
  const std::int64_t big = R * L;
  const std::int64_t sn = to_i64(seq.s(n));
  const std::int64_t sn1 = to_i64(seq.s(n + 1));
  const std::int64_t cyc = to_i64(seq.group_order(n));
  const std::int64_t big_group = 2 * cyc;

  const std::vector<std::int64_t> uperm = dense_basis_permutation(permutation_unitary(seq, n), seq);
  const LevelPermutation v = level_permutation(seq, n + 1);
  std::vector<std::int64_t> vperm(static_cast<std::size_t>(L));
  for (std::int64_t i = 0; i < L; ++i) {
    vperm[static_cast<std::size_t>(i)] = to_i64(v.basis_image(Int(i + 1))) - 1;
  }

  const std::vector<Vec3> anchor = scheme_point(PointScheme{seed}, seq, n);

  double max_dev = 0.0;
  for (int sample = 0; sample < samples; ++sample) {
    std::uint64_t state = mix_seed(seed, static_cast<std::uint64_t>(sample) + 1);
    auto uniform = [&state](double lo, double hi) {
      return lo + (hi - lo) * unit_double(splitmix64(state));
    };

    std::vector<Vec3> x(static_cast<std::size_t>(sn1));
    for (auto& pt : x) pt = sphere_from_uv(uniform(0, 1), uniform(0, 1));
    const std::int64_t k = static_cast<std::int64_t>(splitmix64(state) %
                                                     static_cast<std::uint64_t>(big_group));

    SampledFunction f;
    f.flat.reserve(static_cast<std::size_t>(cyc));
    f.scaled.reserve(static_cast<std::size_t>(cyc));
    for (std::int64_t t = 0; t < cyc; ++t) {
      Eigen::MatrixXd A(R, R), B(R, R);
      for (std::int64_t a = 0; a < R; ++a) {
        for (std::int64_t b = 0; b < R; ++b) {
          A(a, b) = uniform(-1, 1);
          B(a, b) = uniform(-1, 1);
        }
      }
      f.flat.push_back(std::move(A));
      f.scaled.push_back(std::move(B));
    }
    f.weights.resize(static_cast<std::size_t>(sn));
    for (auto& w : f.weights) w = {uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)};

    auto slot_value = [&](std::int64_t slot, std::int64_t group, bool post_shift) {
      const SlotContent sc = content(slot);
      if (sc.kind == EigenvalueMap::Kind::CoordProj) {
        const Vec3* y = x.data() + (sc.index - 1) * sn;
        std::int64_t t = group % cyc;
        if (post_shift) t = (t + 1) % cyc;
        return f.eval(y, t);
      }
      std::int64_t t = sc.index;
      if (post_shift) t = (t + 1) % cyc;
      return f.eval(anchor.data(), t);
    };

    // left: assemble the diagonal at (x, k+1), then conjugate by u_n (x) v
    Eigen::MatrixXd lhs = Eigen::MatrixXd::Zero(big, big);
    const std::int64_t k1 = (k + 1) % big_group;
    for (std::int64_t i = 0; i < L; ++i) {
      const Eigen::MatrixXd block = slot_value(i + 1, k1, false);
      const std::int64_t vi = vperm[static_cast<std::size_t>(i)];
      for (std::int64_t a = 0; a < R; ++a) {
        for (std::int64_t b = 0; b < R; ++b) {
          lhs(vi * R + uperm[static_cast<std::size_t>(a)],
              vi * R + uperm[static_cast<std::size_t>(b)]) = block(a, b);
        }
      }
    }

    // right: shift and conjugate inside each slot, assemble in place
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(big, big);
    for (std::int64_t i = 0; i < L; ++i) {
      const Eigen::MatrixXd block = slot_value(i + 1, k, true);
      for (std::int64_t a = 0; a < R; ++a) {
        for (std::int64_t b = 0; b < R; ++b) {
          rhs(i * R + uperm[static_cast<std::size_t>(a)],
              i * R + uperm[static_cast<std::size_t>(b)]) = block(a, b);
        }
      }
    }

    max_dev = std::max(max_dev, (lhs - rhs).norm());
  }
  return max_dev;
}

}  // namespace

double spot_check_intertwine(const Sequences& seq, int n, std::uint64_t seed, int samples,
                             std::int64_t dense_guard) {
  const std::int64_t d = to_i64(seq.d(n + 1));
  return spot_check_core(
      seq, n, [d](std::int64_t i) { return structural_content(i, d); }, seed, samples,
      dense_guard);
}

double spot_check_intertwine_map(const ConnectingMap& map, const Sequences& seq,
                                 std::uint64_t seed, int samples, std::int64_t dense_guard) {
  if (map.to_stage != map.from_stage + 1) {
    throw std::invalid_argument("spot check: expects a single-level map");
  }
  const int n = map.from_stage;
  if (Int(map.paths.size()) != seq.l(n + 1)) {
    throw std::invalid_argument("spot check: map has wrong slot count");
  }
  const auto* paths = map.paths.data();
  return spot_check_core(
      seq, n,
      [paths](std::int64_t i) {
        const EigenvalueMap& e = paths[i - 1][0];
        return SlotContent{e.kind, e.index};
      },
      seed, samples, dense_guard);
}

// ---------------------------------------------------------------------------
// towers
// ---------------------------------------------------------------------------

RokhlinTower rokhlin_tower(const Sequences& seq, int n) {
  if (n < 0 || n > seq.cap()) throw std::invalid_argument("tower stage beyond cap");
  const std::int64_t len = to_i64(pow2(n));
  RokhlinTower tower;
  tower.stage = n;
  tower.elements.reserve(static_cast<std::size_t>(len));
  // The automorphism carries the indicator of e to the indicator of e-1, so
  // enumerating elements in decreasing group order yields slot k -> slot k+1.
  for (std::int64_t k = 0; k < len; ++k) {
    tower.elements.push_back((len - k) % len);
  }
  return tower;
}

int tower_stage_for_length(const Int& min_length) {
  if (min_length < 1) throw std::invalid_argument("tower length must be positive");
  int n = 0;
  while (pow2(n) < min_length) ++n;
  return n;
}

TowerReport verify_tower(const RokhlinTower& tower, const Sequences& seq) {
  TowerReport rep;
  rep.n = tower.stage;
  rep.length = Int(tower.elements.size());

  const std::int64_t order = to_i64(seq.group_order(tower.stage));

  // partition of unity: indicators of every group element, each exactly once
  std::vector<bool> seen(static_cast<std::size_t>(order), false);
  bool partition = Int(tower.elements.size()) == order;
  for (std::int64_t e : tower.elements) {
    if (e < 0 || e >= order || seen[static_cast<std::size_t>(e)]) {
      partition = false;
      break;
    }
    seen[static_cast<std::size_t>(e)] = true;
  }
  rep.partition_ok = partition;

  // alpha(indicator of e)(x, j) = indicator(e)(x, j+1) up to a unitary that
  // fixes scalar blocks, i.e. the indicator of e-1
  bool shift = partition;
  for (std::size_t k = 0; shift && k < tower.elements.size(); ++k) {
    const std::int64_t image = ((tower.elements[k] - 1) % order + order) % order;
    const std::int64_t next = tower.elements[(k + 1) % tower.elements.size()];
    shift = image == next;
    if (!shift) {
      rep.detail = "alpha moves slot " + std::to_string(k) + " to the indicator of " +
                   std::to_string(image) + ", tower expects " + std::to_string(next);
    }
  }
  rep.shift_ok = shift;

  // indicator projections are scalar multiples of the identity block, hence
  // exactly central; the approximate tower conditions hold with epsilon = 0
  rep.central_ok = true;
  rep.epsilon = 0.0;
  if (rep.detail.empty()) {
    rep.detail = "exact: partition, one-step shift, centrality (epsilon = 0)";
  }
  return rep;
}

TowerReport verify_tower(const RokhlinTower& tower, const OdometerAutomorphism& alpha,
                         const Sequences& seq) {
  if (alpha.stage != tower.stage) {
    throw std::invalid_argument("verify_tower: automorphism stage " +
                                std::to_string(alpha.stage) + " != tower stage " +
                                std::to_string(tower.stage));
  }
  // the unitary is scalar on the indicator blocks whatever its factors are;
  // the shift carries the whole action, which the stage check pins down
  return verify_tower(tower, seq);
}

}  // namespace ahcert
