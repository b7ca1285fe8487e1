#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "supports/graph_system.hpp"
#include "supports/rotation_graph.hpp"
#include "supports/tree_decomposition.hpp"

namespace supports {

enum class SupportKind { primal, dual, intersection };

inline const char* to_string(SupportKind k) {
  switch (k) {
    case SupportKind::primal: return "primal";
    case SupportKind::dual: return "dual";
    case SupportKind::intersection: return "intersection";
  }
  return "?";
}

// A support graph plus its certificate. Primal supports live on host vertex ids; dual and
// intersection supports use the index of each subgraph in the input family as its vertex id,
// with `labels` naming it.
struct SupportResult {
  SupportKind kind = SupportKind::primal;
  RotationGraph graph;
  bool has_rotation = false;
  std::map<VertexId, std::string> labels;
  std::optional<TreeDecomposition> decomposition;
  std::vector<std::string> trace;

  std::optional<VertexId> vertex_of(const std::string& label) const {
    for (const auto& [v, l] : labels) {
      if (l == label) return v;
    }
    return std::nullopt;
  }
};

// Drops loops and all but the lowest-id edge of each parallel class. Deleting edges never
// raises the genus of the rotation.
inline RotationGraph simplify(const RotationGraph& g) {
  RotationGraph out = g;
  std::set<std::pair<VertexId, VertexId>> seen;
  for (const auto& [e, ed] : g.edges()) {
    auto key = std::minmax(ed.a, ed.b);
    if (ed.is_loop() || !seen.insert(key).second) out.remove_edge(e);
  }
  return out;
}

// Cap from the default formula 10 (|V| + |E| + |H|)^2.
inline std::size_t default_cap(const GraphSystem& sys) {
  std::size_t s = sys.host.vertex_count() + sys.host.edge_count() + sys.family_h.size();
  return 10 * s * s;
}

struct BuildOptions {
  std::optional<std::size_t> cap;  // elementary operations; default_cap when absent
  bool audit = false;              // re-check invariants after every step (slow)
};

}  // namespace supports
