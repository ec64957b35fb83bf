#include "ahcert/system.hpp"

#include <stdexcept>

namespace ahcert {

std::string StageAlgebra::describe() const {
  return "C((S^2)^" + sphere_factors.str() + " x Z_" + group_order.str() + ", M_" +
         matrix_size.str() + ")";
}

StageAlgebra stage_algebra(const Sequences& seq, int n) {
  return StageAlgebra{n, seq.r(n), seq.s(n), seq.group_order(n)};
}

ConnectingMap identity_map(int n) {
  ConnectingMap m;
  m.from_stage = m.to_stage = n;
  m.paths.push_back({});  // the empty composite
  return m;
}

ConnectingMap connecting_map(const Sequences& seq, int n, std::int64_t path_guard) {
  if (n < 0 || n + 1 > seq.cap()) {
    throw std::invalid_argument("connecting_map: stage " + std::to_string(n + 1) +
                                " beyond cap " + std::to_string(seq.cap()));
  }
  const Int& l = seq.l(n + 1);
  if (l > path_guard) {
    throw std::invalid_argument("connecting_map: l(" + std::to_string(n + 1) + ") = " +
                                l.str() + " exceeds path guard " + std::to_string(path_guard) +
                                "; use the structural checks instead of explicit paths");
  }
  const std::int64_t d = to_i64(seq.d(n + 1));
  const std::int64_t evals = to_i64(seq.group_order(n));
  ConnectingMap m;
  m.from_stage = n;
  m.to_stage = n + 1;
  m.paths.reserve(static_cast<std::size_t>(d + evals));
  for (std::int64_t j = 1; j <= d; ++j) {
    m.paths.push_back({EigenvalueMap{EigenvalueMap::Kind::CoordProj, n + 1, j}});
  }
  for (std::int64_t e = 0; e < evals; ++e) {
    m.paths.push_back({EigenvalueMap{EigenvalueMap::Kind::PointEval, n + 1, e}});
  }
  return m;
}

ConnectingMap compose(const ConnectingMap& first, const ConnectingMap& second,
                      std::int64_t path_guard) {
  if (first.to_stage != second.from_stage) {
    throw std::invalid_argument("compose: stage mismatch (" + std::to_string(first.to_stage) +
                                " vs " + std::to_string(second.from_stage) + ")");
  }
  if (first.from_stage == first.to_stage) return second;
  if (second.from_stage == second.to_stage) return first;
  const std::size_t count = first.paths.size() * second.paths.size();
  if (count > static_cast<std::size_t>(path_guard)) {
    throw std::invalid_argument("compose: path count " + std::to_string(count) +
                                " exceeds guard " + std::to_string(path_guard));
  }
  ConnectingMap out;
  out.from_stage = first.from_stage;
  out.to_stage = second.to_stage;
  out.paths.reserve(count);
  // The outer map is applied last, so its slot index varies slowest.
  for (const Path& ps : second.paths) {
    for (const Path& pf : first.paths) {
      Path combined = ps;
      combined.insert(combined.end(), pf.begin(), pf.end());
      out.paths.push_back(std::move(combined));
    }
  }
  return out;
}

bool single_level_layout_ok(const ConnectingMap& map, const Sequences& seq, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (map.to_stage != map.from_stage + 1) return fail("not a single-level map");
  const int level = map.to_stage;
  const Int d = seq.d(level);
  const Int evals = seq.group_order(map.from_stage);
  if (Int(map.paths.size()) != d + evals) {
    return fail("slot count " + std::to_string(map.paths.size()) + " != l(" +
                std::to_string(level) + ") = " + Int(d + evals).str());
  }
  for (std::size_t i = 0; i < map.paths.size(); ++i) {
    if (map.paths[i].size() != 1) return fail("slot " + std::to_string(i + 1) + ": composite path in single-level map");
    const EigenvalueMap& e = map.paths[i][0];
    if (e.level != level) return fail("slot " + std::to_string(i + 1) + ": wrong level");
    const Int slot(i + 1);
    if (slot <= d) {
      if (e.kind != EigenvalueMap::Kind::CoordProj || Int(e.index) != slot) {
        return fail("slot " + slot.str() + ": expected coordinate projection of block " + slot.str());
      }
    } else {
      const Int expect = slot - d - 1;
      if (e.kind != EigenvalueMap::Kind::PointEval || Int(e.index) != expect) {
        return fail("slot " + slot.str() + ": expected point evaluation at element " + expect.str());
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

Int ClassComponent::rank() const {
  Int total = trivial;
  for (const auto& [coord, mult] : lines) total += mult;
  return total;
}

Int ProjectionClass::rank_checked() const {
  if (components.empty()) throw std::invalid_argument("class has no components");
  Int rank = components[0].rank();
  for (std::size_t k = 1; k < components.size(); ++k) {
    if (components[k].rank() != rank) {
      throw std::invalid_argument("malformed class: component " + std::to_string(k) +
                                  " has rank " + components[k].rank().str() +
                                  ", component 0 has rank " + rank.str());
    }
  }
  return rank;
}

bool ProjectionClass::component_uniform() const {
  for (std::size_t k = 1; k < components.size(); ++k) {
    if (!(components[k] == components[0])) return false;
  }
  return true;
}

bool ProjectionClass::lines_distinct() const {
  for (const auto& comp : components) {
    for (const auto& [coord, mult] : comp.lines) {
      if (mult != 1) return false;
    }
  }
  return true;
}

ProjectionClass bott_class() {
  ProjectionClass b;
  b.stage = 0;
  ClassComponent comp;
  comp.lines[Int(1)] = 1;
  b.components.push_back(std::move(comp));
  return b;
}

ProjectionClass trivial_class(int stage, const Int& rank) {
  if (stage < 0 || rank < 0) throw std::invalid_argument("trivial_class: bad arguments");
  ProjectionClass p;
  p.stage = stage;
  ClassComponent comp;
  comp.trivial = rank;
  p.components.assign(static_cast<std::size_t>(to_i64(pow2(stage))), comp);
  return p;
}

ProjectionClass direct_sum(const ProjectionClass& a, const ProjectionClass& b) {
  if (a.stage != b.stage || a.components.size() != b.components.size()) {
    throw std::invalid_argument("direct_sum: stage mismatch");
  }
  ProjectionClass out = a;
  for (std::size_t k = 0; k < out.components.size(); ++k) {
    out.components[k].trivial += b.components[k].trivial;
    for (const auto& [coord, mult] : b.components[k].lines) {
      out.components[k].lines[coord] += mult;
    }
  }
  return out;
}

ProjectionClass push_class(const ProjectionClass& cls, const ConnectingMap& map,
                           const Sequences& seq) {
  if (cls.stage != map.from_stage) {
    throw std::invalid_argument("push_class: class at stage " + std::to_string(cls.stage) +
                                ", map departs from stage " + std::to_string(map.from_stage));
  }
  if (map.to_stage > seq.cap()) throw std::invalid_argument("push_class: map beyond cap");
  const Int expect_components = pow2(cls.stage);
  if (Int(cls.components.size()) != expect_components) {
    throw std::invalid_argument("push_class: class has wrong component count");
  }
  const Int src_rank = cls.rank_checked();

  const int m = map.to_stage;
  const std::int64_t out_components = to_i64(pow2(m));
  ProjectionClass out;
  out.stage = m;
  out.components.resize(static_cast<std::size_t>(out_components));

  for (std::int64_t kp = 0; kp < out_components; ++kp) {
    ClassComponent& target = out.components[static_cast<std::size_t>(kp)];
    for (const Path& path : map.paths) {
      bool frozen = false;
      Int offset = 0;
      Int comp = kp;
      for (const EigenvalueMap& e : path) {
        if (e.kind == EigenvalueMap::Kind::CoordProj) {
          if (!frozen) offset += (Int(e.index) - 1) * seq.s(e.level - 1);
          comp %= pow2(e.level - 1);
        } else {
          frozen = true;
          comp = e.index;
        }
      }
      const ClassComponent& source = cls.components[static_cast<std::size_t>(to_i64(comp))];
      if (frozen) {
        // evaluation at a fixed base point: every atom contributes trivially
        target.trivial += source.rank();
      } else {
        target.trivial += source.trivial;
        for (const auto& [coord, mult] : source.lines) {
          target.lines[offset + coord] += mult;
        }
      }
    }
  }

  // unital propagation: rank multiplies by r(m)/r(n)
  const Int want = src_rank * seq.r(m) / seq.r(map.from_stage);
  if (out.rank_checked() != want) {
    throw std::logic_error("push_class: rank bookkeeping violated");
  }
  return out;
}

Rat trace_of_class(const ProjectionClass& cls, const Sequences& seq) {
  return Rat(cls.rank_checked(), seq.r(cls.stage));
}

std::optional<UniformClassSummary> summarize_uniform(const ProjectionClass& cls) {
  if (cls.components.empty() || !cls.component_uniform()) return std::nullopt;
  const ClassComponent& c = cls.components[0];
  // lines must fill 1..N each exactly once
  Int expect = 1;
  for (const auto& [coord, mult] : c.lines) {
    if (mult != 1 || coord != expect) return std::nullopt;
    ++expect;
  }
  return UniformClassSummary{cls.stage, expect - 1, c.trivial};
}

UniformClassSummary push_summary(const UniformClassSummary& src, const Sequences& seq,
                                 int to_stage) {
  if (to_stage < src.stage || to_stage > seq.cap()) {
    throw std::invalid_argument("push_summary: bad target stage");
  }
  if (src.line_block != 0 && src.line_block != seq.s(src.stage)) {
    throw std::invalid_argument(
        "push_summary: line block must be empty or full (1..s(n)) for the closed form");
  }
  UniformClassSummary cur = src;
  for (int level = src.stage + 1; level <= to_stage; ++level) {
    const Int d = seq.d(level);
    const Int evals = pow2(level - 1);
    const Int rank = cur.line_block + cur.trivial;
    cur.line_block *= d;                       // blocks tile 1..s(level) exactly
    cur.trivial = d * cur.trivial + evals * rank;
    cur.stage = level;
  }
  return cur;
}

Rat trace_of_summary(const UniformClassSummary& s, const Sequences& seq) {
  return Rat(s.line_block + s.trivial, seq.r(s.stage));
}

}  // namespace ahcert
