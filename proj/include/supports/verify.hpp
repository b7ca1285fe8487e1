#pragma once

// Support predicates, certificate checks, grid containment, and support coloring.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "supports/graph_system.hpp"
#include "supports/rotation_graph.hpp"
#include "supports/support_result.hpp"
#include "supports/tree_decomposition.hpp"

namespace supports {

struct SupportCheck {
  bool holds = true;
  std::optional<std::size_t> hyperedge;  // first hyperedge that is not connected
  std::vector<VertexSet> components;
  explicit operator bool() const { return holds; }
};

inline SupportCheck is_support(const std::vector<VertexSet>& hyperedges, const Adjacency& q) {
  for (std::size_t i = 0; i < hyperedges.size(); ++i) {
    for (VertexId v : hyperedges[i]) {
      if (!q.count(v)) {
        throw SupportError(ErrorKind::structural,
                           "hyperedge " + std::to_string(i) + " uses unknown vertex " + std::to_string(v));
      }
    }
    auto comps = induced_components(q, hyperedges[i]);
    if (comps.size() > 1) return {false, i, comps};
  }
  return {};
}

inline SupportCheck is_support(const std::vector<VertexSet>& hyperedges, const RotationGraph& q) {
  return is_support(hyperedges, adjacency(q));
}

// b(H) for every H with at least one blue vertex.
inline std::vector<VertexSet> primal_hyperedges(const GraphSystem& sys) {
  std::vector<VertexSet> out;
  for (const Subgraph& h : sys.family_h) {
    VertexSet b;
    for (VertexId v : h.vertices) {
      if (sys.is_blue(v)) b.insert(v);
    }
    if (!b.empty()) out.push_back(std::move(b));
  }
  return out;
}

namespace detail {

inline VertexId support_vertex(const SupportResult& res, const std::string& label) {
  auto v = res.vertex_of(label);
  if (!v) throw SupportError(ErrorKind::structural, "support has no vertex for subgraph " + label);
  return *v;
}

}  // namespace detail

// H_v for every host vertex v, as support vertices.
inline std::vector<VertexSet> dual_hyperedges(const GraphSystem& sys, const SupportResult& res) {
  std::vector<VertexSet> out;
  for (VertexId v : sys.host.vertices()) {
    VertexSet e;
    for (const Subgraph& h : sys.family_h) {
      if (h.vertices.count(v)) e.insert(detail::support_vertex(res, h.label));
    }
    if (!e.empty()) out.push_back(std::move(e));
  }
  return out;
}

// H_K = {H : H ∩ K ≠ ∅} for every K, as support vertices.
inline std::vector<VertexSet> intersection_hyperedges(const GraphSystem& sys, const SupportResult& res) {
  std::vector<VertexSet> out;
  for (const Subgraph& k : require_k(sys)) {
    VertexSet e;
    for (const Subgraph& h : sys.family_h) {
      if (intersects(h.vertices, k.vertices)) e.insert(detail::support_vertex(res, h.label));
    }
    if (!e.empty()) out.push_back(std::move(e));
  }
  return out;
}

inline SupportCheck verify_support(const GraphSystem& sys, const SupportResult& res) {
  switch (res.kind) {
    case SupportKind::primal: return is_support(primal_hyperedges(sys), res.graph);
    case SupportKind::dual: return is_support(dual_hyperedges(sys, res), res.graph);
    case SupportKind::intersection: return is_support(intersection_hyperedges(sys, res), res.graph);
  }
  return {};
}

// First special edge of the host whose two subgraph sets have no support edge between them.
inline std::optional<EdgeId> special_edge_violation(const GraphSystem& sys, const SupportResult& res) {
  auto adj = adjacency(res.graph);
  for (EdgeId e : special_edges(sys)) {
    const Edge& ed = sys.host.edge(e);
    bool joined = false;
    for (std::size_t i : members_at(sys.family_h, ed.a)) {
      for (std::size_t j : members_at(sys.family_h, ed.b)) {
        VertexId x = detail::support_vertex(res, sys.family_h[i].label);
        VertexId y = detail::support_vertex(res, sys.family_h[j].label);
        joined = joined || adj[x].count(y) != 0;
      }
    }
    if (!joined) return e;
  }
  return std::nullopt;
}

inline bool check_genus_certificate(const SupportResult& res, int bound) {
  if (!res.has_rotation) return false;
  audit(res.graph);
  return euler_genus(res.graph) <= bound;
}

// Planar rotation in which each component has a face through all of its vertices.
inline bool is_outerplanar_certified(const SupportResult& res) {
  if (!res.has_rotation) return false;
  const RotationGraph& g = res.graph;
  audit(g);
  if (euler_genus(g) != 0) return false;
  FacePartition fp = faces(g);
  for (const auto& comp : components(g)) {
    if (comp.size() == 1) continue;
    VertexSet want(comp.begin(), comp.end());
    bool found = false;
    for (const auto& f : fp.faces) {
      if (f.empty() || !want.count(g.origin(f.front()))) continue;
      VertexSet seen;
      for (DartId d : f) seen.insert(g.origin(d));
      found = found || seen == want;
    }
    if (!found) return false;
  }
  return true;
}

using GridLabeling = std::map<std::pair<int, int>, VertexId>;

// Grid edges (i,j)-(i,j+1) and (i,j)-(i+1,j) for 0 <= i,j < n are all present; when
// `induced`, no other pair of labeled vertices is adjacent.
inline bool contains_grid(const Adjacency& q, const GridLabeling& lab, int n, bool induced = false) {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!lab.count({i, j}) || !q.count(lab.at({i, j}))) return false;
  auto adjacent = [&](VertexId a, VertexId b) { return q.at(a).count(b) != 0; };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j + 1 < n && !adjacent(lab.at({i, j}), lab.at({i, j + 1}))) return false;
      if (i + 1 < n && !adjacent(lab.at({i, j}), lab.at({i + 1, j}))) return false;
    }
  }
  if (!induced) return true;
  for (const auto& [p, a] : lab) {
    for (const auto& [r, b] : lab) {
      int dist = std::abs(p.first - r.first) + std::abs(p.second - r.second);
      if (dist > 1 && adjacent(a, b)) return false;
    }
  }
  return true;
}

inline bool contains_grid(const RotationGraph& q, const GridLabeling& lab, int n, bool induced = false) {
  return contains_grid(adjacency(q), lab, n, induced);
}

// floor((7 + sqrt(1 + 24 g)) / 2), computed in integers.
inline int heawood_bound(int genus) {
  int s = 0;
  while ((s + 1) * (s + 1) <= 1 + 24 * genus) ++s;
  return (7 + s) / 2;
}

// Greedy coloring in smallest-last order; colors are 0-based.
inline std::map<VertexId, int> greedy_smallest_last(const Adjacency& q) {
  Adjacency rest = q;
  std::vector<VertexId> order;
  while (!rest.empty()) {
    auto it = std::min_element(rest.begin(), rest.end(), [](const auto& a, const auto& b) {
      return a.second.size() < b.second.size();
    });
    VertexId v = it->first;
    order.push_back(v);
    for (VertexId w : it->second) rest[w].erase(v);
    rest.erase(v);
  }
  std::reverse(order.begin(), order.end());
  std::map<VertexId, int> color;
  for (VertexId v : order) {
    std::set<int> used;
    for (VertexId w : q.at(v)) {
      auto c = color.find(w);
      if (c != color.end()) used.insert(c->second);
    }
    int c = 0;
    while (used.count(c)) ++c;
    color[v] = c;
  }
  return color;
}

// Root-first over the decomposition, each vertex takes the least color unused in the bag where it
// first appears. Proper with at most width + 1 colors when `td` is valid for `q`.
inline std::map<VertexId, int> color_by_decomposition(const Adjacency& q, const TreeDecomposition& td) {
  std::map<VertexId, int> color;
  for (NodeId x : td.preorder()) {
    const VertexSet& bag = td.bags.at(x);
    std::set<int> used;
    for (VertexId v : bag) {
      auto c = color.find(v);
      if (c != color.end()) used.insert(c->second);
    }
    for (VertexId v : bag) {
      if (color.count(v)) continue;
      int c = 0;
      while (used.count(c)) ++c;
      color[v] = c;
      used.insert(c);
    }
  }
  for (const auto& [v, nb] : q)
    if (!color.count(v)) color[v] = 0;
  return color;
}

// Greedy smallest-last for rotation certificates; decomposition order for width certificates.
inline std::map<VertexId, int> color_support(const SupportResult& res) {
  if (!res.has_rotation && res.decomposition) return color_by_decomposition(adjacency(res.graph), *res.decomposition);
  return greedy_smallest_last(adjacency(res.graph));
}

inline int colors_used(const std::map<VertexId, int>& coloring) {
  int m = -1;
  for (const auto& [v, c] : coloring) m = std::max(m, c);
  return m + 1;
}

// Proper on q and no hyperedge of size >= 2 monochromatic.
inline bool coloring_is_good(const Adjacency& q, const std::map<VertexId, int>& coloring,
                             const std::vector<VertexSet>& hyperedges) {
  for (const auto& [v, nb] : q)
    for (VertexId w : nb)
      if (w != v && coloring.at(v) == coloring.at(w)) return false;
  for (const VertexSet& e : hyperedges) {
    if (e.size() < 2) continue;
    std::set<int> cs;
    for (VertexId v : e) cs.insert(coloring.at(v));
    if (cs.size() < 2) return false;
  }
  return true;
}

}  // namespace supports
