#pragma once

// Vertex bypassing: replace v by a cycle on subdivision vertices of its edges and add
// non-crossing chords inside that cycle so every subgraph through v stays connected.

#include <algorithm>
#include <functional>
#include <optional>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "supports/cycle_chords.hpp"
#include "supports/graph_system.hpp"
#include "supports/rotation_graph.hpp"

namespace supports {

struct BypassResult {
  GraphSystem system;
  std::vector<VertexId> cycle;     // u_0..u_{k-1} in the rotation order of v
  std::vector<VertexId> far_ends;  // v_0..v_{k-1}
  std::vector<Chord> chords;
};

namespace detail {

inline Subgraph bypass_member(const Subgraph& s, VertexId v, const BypassResult& r) {
  if (!s.vertices.count(v)) return s;
  Subgraph out{s.label, s.vertices};
  out.vertices.erase(v);
  for (std::size_t i = 0; i < r.cycle.size(); ++i) {
    if (s.vertices.count(r.far_ends[i])) out.vertices.insert(r.cycle[i]);
  }
  return out;
}

// One cycle position per component of (member - v), chosen so that no two members alternate.
// Positions in the same component are already joined away from v and need no chord.
inline std::optional<std::vector<Subgraph>> component_representatives(
    const RotationGraph& host, VertexId v, const std::vector<Subgraph>& members,
    const std::vector<VertexId>& cycle, const std::vector<VertexId>& far_ends,
    std::size_t budget = 200000) {
  auto adj = adjacency(host);
  adj.erase(v);
  for (auto& [x, nb] : adj) nb.erase(v);
  struct Need {
    std::string label;
    std::vector<std::vector<VertexId>> classes;
  };
  std::vector<Need> needs;
  for (const Subgraph& h : members) {
    if (!h.vertices.count(v)) continue;
    VertexSet rest = h.vertices;
    rest.erase(v);
    auto comps = induced_components(adj, rest);
    std::vector<std::vector<VertexId>> classes(comps.size());
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      for (std::size_t c = 0; c < comps.size(); ++c) {
        if (comps[c].count(far_ends[i])) classes[c].push_back(cycle[i]);
      }
    }
    std::erase_if(classes, [](const auto& c) { return c.empty(); });
    if (classes.size() >= 2) needs.push_back({h.label, std::move(classes)});
  }
  std::vector<Subgraph> chosen(needs.size());
  std::vector<VertexId> order = cycle;
  auto compatible = [&](std::size_t upto) {
    for (std::size_t a = 0; a < upto; ++a) {
      CycleFamily cf{order, {chosen[a], chosen[upto]}};
      if (!is_abab_free(cf)) return false;
    }
    return true;
  };
  std::size_t steps = 0;
  // Depth-first over members, then over one pick per class.
  std::function<bool(std::size_t, std::size_t)> place = [&](std::size_t m, std::size_t c) -> bool {
    if (++steps > budget) return false;
    if (m == needs.size()) return true;
    if (c == needs[m].classes.size()) return compatible(m) && place(m + 1, 0);
    for (VertexId u : needs[m].classes[c]) {
      chosen[m].vertices.insert(u);
      if (place(m, c + 1)) return true;
      chosen[m].vertices.erase(u);
    }
    return false;
  };
  for (std::size_t m = 0; m < needs.size(); ++m) chosen[m].label = needs[m].label;
  if (!place(0, 0)) return std::nullopt;
  return chosen;
}

inline BypassResult bypass_impl(const GraphSystem& sys, VertexId v, bool track_k,
                                bool by_component = false) {
  if (!sys.host.has_vertex(v)) {
    throw SupportError(ErrorKind::precondition, "cannot bypass unknown vertex " + std::to_string(v));
  }
  if (track_k) require_k(sys);
  BypassResult r;
  RotationGraph g = sys.host;

  std::vector<EdgeId> loops;
  for (DartId d : g.rotation(v)) {
    if (g.edge(dart_edge(d)).is_loop()) loops.push_back(dart_edge(d));
  }
  std::sort(loops.begin(), loops.end());
  loops.erase(std::unique(loops.begin(), loops.end()), loops.end());
  for (EdgeId e : loops) g.remove_edge(e);

  std::vector<EdgeId> spokes;
  for (DartId d : g.rotation(v)) spokes.push_back(dart_edge(d));
  for (EdgeId e : spokes) g = subdivide_edge(g, e).first;
  for (DartId d : g.rotation(v)) {
    VertexId u = g.head(d);
    const auto& ru = g.rotation(u);
    r.cycle.push_back(u);
    r.far_ends.push_back(g.head(ru[0] == twin(d) ? ru[1] : ru[0]));
  }
  const std::size_t k = r.cycle.size();

  const EdgeId first_cycle_edge = g.next_edge_id();
  g = insert_cycle_around(g, v, r.cycle);
  g.remove_vertex(v);

  r.system = sys;
  r.system.outer_face.clear();
  for (auto& h : r.system.family_h) h = bypass_member(h, v, r);
  if (r.system.family_k) {
    for (auto& kk : *r.system.family_k) {
      if (track_k && kk.vertices.count(v)) {
        kk.vertices.erase(v);
        kk.vertices.insert(r.cycle.begin(), r.cycle.end());
      } else {
        kk = bypass_member(kk, v, r);
      }
    }
  }
  if (sys.colored()) {
    r.system.coloring.erase(v);
    for (VertexId u : r.cycle) r.system.coloring[u] = Color::red;
  }

  if (k >= 4) {
    CycleFamily cf;
    cf.order = r.cycle;
    VertexSet on_cycle(r.cycle.begin(), r.cycle.end());
    for (const Subgraph& h : r.system.family_h) {
      VertexSet part = set_intersection(h.vertices, on_cycle);
      if (!part.empty()) cf.family.push_back(Subgraph{h.label, std::move(part)});
    }
    if (auto ab = is_abab_free(cf); !ab) {
      std::optional<std::vector<Subgraph>> reps;
      if (by_component) {
        reps = component_representatives(sys.host, v, sys.family_h, r.cycle, r.far_ends);
      }
      if (reps) {
        cf.family = std::move(*reps);
        ab = is_abab_free(cf);
      }
    }
    if (auto ab = is_abab_free(cf); !ab) {
      const auto& w = *ab.witness;
      throw SupportError(ErrorKind::not_cross_free,
                         "bypass of vertex " + std::to_string(v) + ": subgraphs " +
                             cf.family[w.first].label + " and " + cf.family[w.second].label +
                             " alternate around it at " + std::to_string(w.vertices[0]) + "," +
                             std::to_string(w.vertices[1]) + "," + std::to_string(w.vertices[2]) +
                             "," + std::to_string(w.vertices[3]));
    }
    r.chords = connect_all(cf);
  }

  // Chords go into the slot v vacated at each u_i: after c_i, ordered by clockwise offset.
  std::map<VertexId, std::size_t> pos;
  for (std::size_t i = 0; i < k; ++i) pos[r.cycle[i]] = i;
  std::map<std::size_t, std::vector<std::pair<std::size_t, DartId>>> slot;
  for (const Chord& c : r.chords) {
    EdgeId e = g.next_edge_id();
    g.add_edge_with_id(e, c.x, c.y, false);
    std::size_t i = pos.at(c.x), j = pos.at(c.y);
    slot[i].push_back({(j + k - i) % k, make_dart(e, 0)});
    slot[j].push_back({(i + k - j) % k, make_dart(e, 1)});
  }
  for (auto& [i, darts] : slot) {
    std::sort(darts.begin(), darts.end());
    std::vector<DartId> ordered;
    for (const auto& [off, d] : darts) ordered.push_back(d);
    EdgeId ci = first_cycle_edge + static_cast<EdgeId>(i);
    g.insert_after(r.cycle[i], make_dart(ci, 0), ordered);
  }
  g.canonicalize();
  r.system.host = std::move(g);
  return r;
}

}  // namespace detail

inline BypassResult bypass_detailed(const GraphSystem& sys, VertexId v) {
  return detail::bypass_impl(sys, v, false);
}

// VB(v). K members through v follow the same rule as H members; their connectivity is not
// restored by chords, so the intersection pipeline uses bypass_tracking_k instead.
inline GraphSystem bypass(const GraphSystem& sys, VertexId v) { return bypass_detailed(sys, v).system; }

// VB(v), except that when members alternate around v, each member only needs to join the
// components of (member - v) it meets on the cycle.
inline BypassResult bypass_by_component_detailed(const GraphSystem& sys, VertexId v) {
  return detail::bypass_impl(sys, v, false, true);
}

// VB(v) where every K through v absorbs the whole new cycle.
inline BypassResult bypass_tracking_k_detailed(const GraphSystem& sys, VertexId v) {
  return detail::bypass_impl(sys, v, true);
}

inline GraphSystem bypass_tracking_k(const GraphSystem& sys, VertexId v) {
  return bypass_tracking_k_detailed(sys, v).system;
}

}  // namespace supports
