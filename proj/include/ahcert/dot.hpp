#pragma once

#include "ahcert/schedule.hpp"

#include <string>

namespace ahcert {

enum class DiagramStyle {
  Chain,      // one node per rank, coordinate-projection edges only
  Tree,       // 2^n nodes per rank, parallel dotted point-evaluation edges
  TreeCross,  // plus the point evaluations that go across branches
};

/// Layered digraph of the first `depth` stages. Double-styled edges carry
/// the d(n+1)-fold coordinate-projection multiplicity; dotted edges are the
/// point evaluations. depth is capped at 4 (2^depth nodes per rank).
std::string emit_dot(const Sequences& seq, int depth, DiagramStyle style);

}  // namespace ahcert
