#pragma once

// Graph systems (G, H) and (G, H, K): a host graph with families of connected
// vertex-induced subgraphs, an optional red/blue coloring, and the predicates on them.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "supports/rotation_graph.hpp"

namespace supports {

enum class Color { red, blue };

struct Subgraph {
  std::string label;
  VertexSet vertices;

  friend bool operator==(const Subgraph& x, const Subgraph& y) {
    return x.label == y.label && x.vertices == y.vertices;
  }
};

struct GraphSystem {
  std::string name = "system";
  RotationGraph host;
  bool embedded = false;            // rotation carries an embedding
  std::vector<EdgeId> outer_face;   // optional designated outer face (edge walk)
  std::vector<Subgraph> family_h;
  std::optional<std::vector<Subgraph>> family_k;
  std::map<VertexId, Color> coloring;  // empty when the system is uncolored

  bool colored() const { return !coloring.empty(); }
  // Uncolored systems treat every vertex as blue.
  bool is_blue(VertexId v) const {
    if (coloring.empty()) return true;
    auto it = coloring.find(v);
    return it != coloring.end() && it->second == Color::blue;
  }
  bool is_red(VertexId v) const { return !is_blue(v); }
};

// Natural label order: numeric labels compare by value and precede non-numeric ones.
inline bool label_less(const std::string& x, const std::string& y) {
  auto numeric = [](const std::string& s) {
    if (s.empty() || s.size() > 9) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
  };
  bool nx = numeric(x), ny = numeric(y);
  if (nx && ny) return std::stoi(x) < std::stoi(y);
  if (nx != ny) return nx;
  return x < y;
}

inline bool is_subset(const VertexSet& a, const VertexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline VertexSet set_minus(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

inline VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

inline VertexSet set_union_of(const VertexSet& a, const VertexSet& b) {
  VertexSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

inline bool intersects(const VertexSet& a, const VertexSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

// Components of the subgraph induced on `s`, each sorted, ordered by minimum vertex.
inline std::vector<VertexSet> induced_components(const std::map<VertexId, VertexSet>& adj,
                                                 const VertexSet& s) {
  std::vector<VertexSet> out;
  VertexSet seen;
  for (VertexId start : s) {
    if (seen.count(start)) continue;
    VertexSet comp;
    std::deque<VertexId> queue{start};
    seen.insert(start);
    while (!queue.empty()) {
      VertexId x = queue.front();
      queue.pop_front();
      comp.insert(x);
      auto it = adj.find(x);
      if (it == adj.end()) continue;
      for (VertexId y : it->second) {
        if (s.count(y) && !seen.count(y)) {
          seen.insert(y);
          queue.push_back(y);
        }
      }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

inline bool induces_connected(const std::map<VertexId, VertexSet>& adj, const VertexSet& s) {
  return induced_components(adj, s).size() <= 1;
}

// Checks that every subgraph references host vertices only, is connected, labels are unique,
// and the coloring (when present) is total.
inline void validate_system(const GraphSystem& sys) {
  auto adj = adjacency(sys.host);
  auto check_family = [&](const std::vector<Subgraph>& fam, const char* tag) {
    std::set<std::string> labels;
    for (const Subgraph& s : fam) {
      if (!labels.insert(s.label).second) {
        throw SupportError(ErrorKind::structural,
                           std::string("duplicate ") + tag + " label " + s.label);
      }
      for (VertexId v : s.vertices) {
        if (!sys.host.has_vertex(v)) {
          throw SupportError(ErrorKind::structural, std::string(tag) + " subgraph " + s.label +
                                                        " uses unknown vertex " + std::to_string(v));
        }
      }
      if (!induces_connected(adj, s.vertices)) {
        throw SupportError(ErrorKind::precondition,
                           std::string(tag) + " subgraph " + s.label + " is not connected");
      }
    }
  };
  check_family(sys.family_h, "H");
  if (sys.family_k) check_family(*sys.family_k, "K");
  if (sys.colored()) {
    for (VertexId v : sys.host.vertices()) {
      if (!sys.coloring.count(v)) {
        throw SupportError(ErrorKind::structural, "vertex " + std::to_string(v) + " has no color");
      }
    }
  }
  if (sys.embedded) audit(sys.host);
}

// Indices of family members containing v.
inline std::vector<std::size_t> members_at(const std::vector<Subgraph>& fam, VertexId v) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    if (fam[i].vertices.count(v)) out.push_back(i);
  }
  return out;
}

// Indices of family members containing both endpoints of the edge.
inline std::vector<std::size_t> members_at_edge(const std::vector<Subgraph>& fam, const Edge& e) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    if (fam[i].vertices.count(e.a) && fam[i].vertices.count(e.b)) out.push_back(i);
  }
  return out;
}

inline std::size_t depth(const GraphSystem& sys, VertexId v) {
  if (!sys.host.has_vertex(v)) {
    throw SupportError(ErrorKind::precondition, "unknown vertex " + std::to_string(v));
  }
  return members_at(sys.family_h, v).size();
}

inline std::size_t edge_depth(const GraphSystem& sys, EdgeId e) {
  return members_at_edge(sys.family_h, sys.host.edge(e)).size();
}

// depth(v) > depth(e) for every incident non-loop edge; vacuously true without edges
// as long as depth(v) >= 1.
inline bool is_maximal_in(const RotationGraph& g, const std::vector<Subgraph>& fam, VertexId v) {
  std::size_t dv = members_at(fam, v).size();
  if (dv == 0) return false;
  for (DartId d : g.rotation(v)) {
    const Edge& e = g.edge(dart_edge(d));
    if (e.is_loop()) continue;
    if (members_at_edge(fam, e).size() >= dv) return false;
  }
  return true;
}

inline bool is_maximal_vertex(const GraphSystem& sys, VertexId v) {
  if (!sys.host.has_vertex(v)) {
    throw SupportError(ErrorKind::precondition, "unknown vertex " + std::to_string(v));
  }
  return is_maximal_in(sys.host, sys.family_h, v);
}

struct ReducedGraph {
  RotationGraph graph;
  std::map<VertexId, VertexId> image;  // host vertex -> reduced vertex
};

inline ReducedGraph reduce_by(const RotationGraph& host, const VertexSet& inside) {
  ReducedGraph out{host, {}};
  for (VertexId v : host.vertices()) out.image[v] = v;
  auto find = [&](VertexId v) {
    while (out.image[v] != v) v = out.image[v];
    return v;
  };
  for (;;) {
    std::optional<EdgeId> pick;
    for (const auto& [e, ed] : out.graph.edges()) {
      if (!ed.is_loop() && inside.count(ed.a) && inside.count(ed.b)) {
        pick = e;
        break;
      }
    }
    if (!pick) break;
    const Edge ed = out.graph.edge(*pick);
    VertexId keep = std::min(ed.a, ed.b);
    VertexId gone = std::max(ed.a, ed.b);
    out.graph = contract_edge(out.graph, *pick, keep);
    out.image[gone] = keep;
  }
  for (auto& [v, img] : out.image) img = find(v);
  return out;
}

// R(h1, h2): contract every edge with both endpoints in V(h1) ∩ V(h2). The merged vertex
// keeps the smallest id of its class.
inline ReducedGraph reduced_graph(const GraphSystem& sys, const Subgraph& h1, const Subgraph& h2) {
  return reduce_by(sys.host, set_intersection(h1.vertices, h2.vertices));
}

struct CrossWitness {
  bool k_family = false;
  std::size_t first = 0;   // H
  std::size_t second = 0;  // H'
  VertexId vertex = 0;     // smallest vertex of the component of H ∩ H'
  std::array<DartId, 4> darts{};  // alternating H\H', H'\H, H\H', H'\H
};

struct CrossFreeResult {
  bool holds = true;
  std::optional<CrossWitness> witness;
  explicit operator bool() const { return holds; }
};

namespace detail {

// Finds four darts alternating between classes 1 and 2 in the cyclic class sequence.
inline std::optional<std::array<std::size_t, 4>> alternation(const std::vector<int>& cls) {
  std::vector<std::pair<int, std::size_t>> runs;  // (class, first index)
  for (std::size_t i = 0; i < cls.size(); ++i) {
    if (cls[i] == 0) continue;
    if (runs.empty() || runs.back().first != cls[i]) runs.push_back({cls[i], i});
  }
  std::size_t cyc = runs.size();
  if (cyc >= 2 && runs.front().first == runs.back().first) --cyc;
  if (cyc < 4) return std::nullopt;
  std::size_t s = runs[0].first == 1 ? 0 : 1;
  std::array<std::size_t, 4> out{};
  for (std::size_t k = 0; k < 4; ++k) out[k] = runs[(s + k) % runs.size()].second;
  return out;
}

}  // namespace detail

// Boundary curves of the ribbon neighborhood of `inside`: each curve lists, in rotation order,
// the darts leaving `inside`. A tree gives one curve, equal to the rotation of the vertex it
// contracts to; components with cycles may give several.
inline std::vector<std::vector<DartId>> boundary_curves(const RotationGraph& g, const VertexSet& inside) {
  auto succ = [&](DartId d) {
    const auto& rot = g.rotation(g.origin(d));
    auto it = std::find(rot.begin(), rot.end(), d);
    return ++it == rot.end() ? rot.front() : *it;
  };
  auto internal = [&](DartId d) { return inside.count(g.head(d)) != 0; };
  std::vector<std::vector<DartId>> out;
  std::set<DartId> seen;
  for (VertexId v : inside) {
    for (DartId start : g.rotation(v)) {
      if (internal(start) || seen.count(start)) continue;
      std::vector<DartId> curve;
      DartId cur = start;
      do {
        seen.insert(cur);
        curve.push_back(cur);
        DartId x = succ(cur);
        while (internal(x)) x = succ(twin(x));
        cur = x;
      } while (cur != start);
      out.push_back(std::move(curve));
    }
  }
  return out;
}

// Checks a single pair; returns a witness when some boundary curve of a component of H ∩ H'
// sees the alternation H\H', H'\H, H\H', H'\H. On tree components this is the rotation of
// the reduced vertex.
inline std::optional<CrossWitness> crossing_for_pair(const RotationGraph& host, const Subgraph& h1,
                                                     const Subgraph& h2) {
  VertexSet common = set_intersection(h1.vertices, h2.vertices);
  if (common.empty()) return std::nullopt;
  for (const VertexSet& comp : induced_components(adjacency(host), common)) {
    for (const auto& curve : boundary_curves(host, comp)) {
      std::vector<int> cls;
      for (DartId d : curve) {
        VertexId far = host.head(d);
        bool in1 = h1.vertices.count(far) != 0;
        bool in2 = h2.vertices.count(far) != 0;
        cls.push_back(in1 && !in2 ? 1 : (in2 && !in1 ? 2 : 0));
      }
      if (auto alt = detail::alternation(cls)) {
        CrossWitness w;
        w.vertex = *comp.begin();
        for (std::size_t k = 0; k < 4; ++k) w.darts[k] = curve[(*alt)[k]];
        return w;
      }
    }
  }
  return std::nullopt;
}

// Every component of every pairwise intersection (within H, and within K) has at most one
// boundary curve. The bypass and contraction steps assume this; a non-contractible or
// separating cycle inside H ∩ H' can turn into a crossing once it is cut.
inline bool simple_intersections(const GraphSystem& sys) {
  auto adj = adjacency(sys.host);
  auto scan = [&](const std::vector<Subgraph>& fam) {
    for (std::size_t i = 0; i < fam.size(); ++i) {
      for (std::size_t j = i + 1; j < fam.size(); ++j) {
        VertexSet common = set_intersection(fam[i].vertices, fam[j].vertices);
        for (const VertexSet& comp : induced_components(adj, common)) {
          if (boundary_curves(sys.host, comp).size() > 1) return false;
        }
      }
    }
    return true;
  };
  return scan(sys.family_h) && (!sys.family_k || scan(*sys.family_k));
}

inline CrossFreeResult is_cross_free(const GraphSystem& sys) {
  if (!sys.embedded) {
    throw SupportError(ErrorKind::precondition, "cross-free check needs an embedded host");
  }
  auto scan = [&](const std::vector<Subgraph>& fam, bool k_family) -> std::optional<CrossWitness> {
    for (std::size_t i = 0; i < fam.size(); ++i) {
      for (std::size_t j = i + 1; j < fam.size(); ++j) {
        if (auto w = crossing_for_pair(sys.host, fam[i], fam[j])) {
          w->k_family = k_family;
          w->first = i;
          w->second = j;
          return w;
        }
      }
    }
    return std::nullopt;
  };
  if (auto w = scan(sys.family_h, false)) return {false, w};
  if (sys.family_k) {
    if (auto w = scan(*sys.family_k, true)) return {false, w};
  }
  return {};
}

struct PiercingWitness {
  bool k_family = false;
  std::size_t first = 0;   // H (or the disconnected member when first == second)
  std::size_t second = 0;  // H'
};

struct NonPiercingResult {
  bool holds = true;
  std::optional<PiercingWitness> witness;
  explicit operator bool() const { return holds; }
};

inline std::optional<PiercingWitness> piercing_in(const std::map<VertexId, VertexSet>& adj,
                                                  const std::vector<Subgraph>& fam) {
  for (std::size_t i = 0; i < fam.size(); ++i) {
    if (!induces_connected(adj, fam[i].vertices)) return PiercingWitness{false, i, i};
  }
  for (std::size_t i = 0; i < fam.size(); ++i) {
    for (std::size_t j = 0; j < fam.size(); ++j) {
      if (i == j) continue;
      if (!induces_connected(adj, set_minus(fam[i].vertices, fam[j].vertices))) {
        return PiercingWitness{false, i, j};
      }
    }
  }
  return std::nullopt;
}

inline NonPiercingResult is_non_piercing(const GraphSystem& sys) {
  auto adj = adjacency(sys.host);
  if (auto w = piercing_in(adj, sys.family_h)) return {false, w};
  if (sys.family_k) {
    if (auto w = piercing_in(adj, *sys.family_k)) {
      w->k_family = true;
      return {false, w};
    }
  }
  return {};
}

// Result of dropping contained subgraphs. `kept[i]` is the input index of the i-th retained
// member; `successor[j]` maps each dropped input index to an immediate successor's input index.
struct ContainmentPlan {
  std::vector<std::size_t> kept;
  std::map<std::size_t, std::size_t> successor;
  bool identity() const { return successor.empty(); }
};

inline std::pair<std::vector<Subgraph>, ContainmentPlan> remove_containments(
    const std::vector<Subgraph>& fam) {
  auto dominated_by = [&](std::size_t i, std::size_t j) {
    if (i == j || !is_subset(fam[i].vertices, fam[j].vertices)) return false;
    if (fam[i].vertices.size() < fam[j].vertices.size()) return true;
    return label_less(fam[j].label, fam[i].label);  // equal sets: the lower label survives
  };
  ContainmentPlan plan;
  std::vector<Subgraph> out;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    std::optional<std::size_t> best;
    for (std::size_t j = 0; j < fam.size(); ++j) {
      if (!dominated_by(i, j)) continue;
      if (!best) {
        best = j;
        continue;
      }
      const Subgraph& b = fam[*best];
      const Subgraph& c = fam[j];
      if (c.vertices.size() < b.vertices.size() ||
          (c.vertices.size() == b.vertices.size() && label_less(c.label, b.label))) {
        best = j;
      }
    }
    if (best) {
      plan.successor[i] = *best;
    } else {
      plan.kept.push_back(i);
      out.push_back(fam[i]);
    }
  }
  return {out, plan};
}

inline std::pair<GraphSystem, ContainmentPlan> remove_containments(const GraphSystem& sys) {
  auto [fam, plan] = remove_containments(sys.family_h);
  GraphSystem out = sys;
  out.family_h = std::move(fam);
  return {out, plan};
}

inline std::vector<EdgeId> special_edges(const GraphSystem& sys) {
  std::vector<EdgeId> out;
  for (const auto& [e, ed] : sys.host.edges()) {
    if (ed.is_loop()) continue;
    auto hu = members_at(sys.family_h, ed.a);
    auto hv = members_at(sys.family_h, ed.b);
    if (hu.empty() || hv.empty()) continue;
    bool disjoint = true;
    for (std::size_t i : hu) {
      if (std::find(hv.begin(), hv.end(), i) != hv.end()) disjoint = false;
    }
    if (disjoint) out.push_back(e);
  }
  return out;
}

inline const std::vector<Subgraph>& require_k(const GraphSystem& sys) {
  if (!sys.family_k) {
    throw SupportError(ErrorKind::precondition, "system has no K family");
  }
  return *sys.family_k;
}

inline bool is_k_vertex(const GraphSystem& sys, VertexId v) {
  const auto& fk = require_k(sys);
  return !members_at(fk, v).empty() && members_at(sys.family_h, v).empty();
}

inline VertexSet k_vertices(const GraphSystem& sys) {
  VertexSet out;
  for (VertexId v : sys.host.vertices()) {
    if (is_k_vertex(sys, v)) out.insert(v);
  }
  return out;
}

// A K-vertex is maximal when no incident edge is full (K_e = K_v).
inline bool k_vertex_maximal(const GraphSystem& sys, VertexId v) {
  const auto& fk = require_k(sys);
  if (!is_k_vertex(sys, v)) return false;
  std::size_t kv = members_at(fk, v).size();
  for (DartId d : sys.host.rotation(v)) {
    const Edge& e = sys.host.edge(dart_edge(d));
    if (e.is_loop()) continue;
    if (members_at_edge(fk, e).size() == kv) return false;
  }
  return true;
}

}  // namespace supports
