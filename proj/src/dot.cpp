#include "ahcert/dot.hpp"

#include <sstream>
#include <stdexcept>

namespace ahcert {

std::string emit_dot(const Sequences& seq, int depth, DiagramStyle style) {
  if (depth < 0 || depth > 4) {
    throw std::invalid_argument("diagram depth must be in [0, 4] (2^depth nodes per rank)");
  }
  if (depth > seq.cap()) throw std::invalid_argument("diagram depth beyond cap");

  std::ostringstream out;
  out << "digraph stages {\n  rankdir=LR;\n  node [shape=box];\n";

  auto node = [](int rank, std::int64_t k) {
    return "s" + std::to_string(rank) + "_" + std::to_string(k);
  };

  for (int rank = 0; rank <= depth; ++rank) {
    const std::int64_t nodes = style == DiagramStyle::Chain ? 1 : (std::int64_t{1} << rank);
    for (std::int64_t k = 0; k < nodes; ++k) {
      out << "  " << node(rank, k) << " [label=\"C" << rank;
      if (style != DiagramStyle::Chain) out << "," << k;
      out << "\"];\n";
    }
  }

  for (int rank = 0; rank < depth; ++rank) {
    const std::string mult = seq.d(rank + 1).str();
    if (style == DiagramStyle::Chain) {
      out << "  " << node(rank, 0) << " -> " << node(rank + 1, 0)
          << " [color=\"black:invis:black\", label=\"x" << mult << "\"];\n";
      continue;
    }
    const std::int64_t src_nodes = std::int64_t{1} << rank;
    const std::int64_t dst_nodes = std::int64_t{1} << (rank + 1);
    for (std::int64_t k = 0; k < src_nodes; ++k) {
      // the two branches over k: group elements congruent to k mod 2^rank
      for (std::int64_t kp : {k, k + src_nodes}) {
        out << "  " << node(rank, k) << " -> " << node(rank + 1, kp)
            << " [color=\"black:invis:black\", label=\"x" << mult << "\"];\n";
        out << "  " << node(rank, k) << " -> " << node(rank + 1, kp) << " [style=dotted];\n";
      }
      if (style == DiagramStyle::TreeCross) {
        for (std::int64_t kp = 0; kp < dst_nodes; ++kp) {
          if (kp % src_nodes == k) continue;  // parallel edges already drawn
          out << "  " << node(rank, k) << " -> " << node(rank + 1, kp)
              << " [style=dotted];\n";
        }
      }
    }
  }

  out << "}\n";
  return out.str();
}

}  // namespace ahcert
