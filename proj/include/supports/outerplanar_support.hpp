#pragma once

// Outerplanar supports: the primal one on a cycle through the blue vertices plus non-crossing
// chords, the dual one by recursive splitting at critical chords.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "supports/cycle_chords.hpp"
#include "supports/genus_support.hpp"
#include "supports/graph_system.hpp"
#include "supports/rotation_graph.hpp"
#include "supports/support_result.hpp"

namespace supports {

// Vertices in the order they first appear on the outer face, component by component (lowest
// vertex first). The designated outer face picks the face when present; otherwise the first
// face meeting every vertex of the component is used.
inline std::vector<VertexId> outer_order(const GraphSystem& sys) {
  detail::require_embedded(sys);
  const RotationGraph& g = sys.host;
  if (euler_genus(g) != 0) {
    throw SupportError(ErrorKind::precondition, "host rotation is not planar");
  }
  FacePartition fp = faces(g);
  std::set<EdgeId> designated(sys.outer_face.begin(), sys.outer_face.end());
  std::vector<VertexId> out;
  for (const auto& comp : components(g)) {
    if (comp.size() == 1) {
      out.push_back(comp.front());
      continue;
    }
    const VertexSet want(comp.begin(), comp.end());
    const std::vector<DartId>* pick = nullptr;
    bool pick_designated = false;
    for (const auto& f : fp.faces) {
      if (f.empty() || !want.count(g.origin(f.front()))) continue;
      VertexSet seen;
      bool on_designated = false;
      for (DartId d : f) {
        seen.insert(g.origin(d));
        on_designated = on_designated || designated.count(dart_edge(d));
      }
      if (seen != want) continue;
      if (!pick || (on_designated && !pick_designated)) {
        pick = &f;
        pick_designated = on_designated;
      }
    }
    if (!pick) {
      throw SupportError(ErrorKind::precondition,
                         "host is not outerplanar-embedded: no face meets every vertex of the "
                         "component of vertex " +
                             std::to_string(comp.front()));
    }
    VertexSet seen;
    for (DartId d : *pick) {
      if (seen.insert(g.origin(d)).second) out.push_back(g.origin(d));
    }
  }
  return out;
}

inline SupportResult primal_outerplanar(const GraphSystem& sys, const BuildOptions& opt = {}) {
  validate_system(sys);
  GraphSystem w = sys;
  w.family_k.reset();
  detail::require_cross_free(w);
  std::vector<std::string> trace;
  detail::Budget budget(opt.cap.value_or(default_cap(sys)), trace);

  SupportResult res;
  res.kind = SupportKind::primal;
  res.has_rotation = true;
  const std::vector<VertexId> order = outer_order(w);
  bool any_red = false;
  for (VertexId v : order) any_red = any_red || w.is_red(v);
  if (!any_red) {
    budget.note("no red vertex: host is the support");
    res.graph = sys.host;
    res.graph.canonicalize();
    res.trace = std::move(trace);
    return res;
  }

  CycleFamily cf;
  for (VertexId v : order) {
    if (w.is_blue(v)) cf.order.push_back(v);
  }
  if (cf.order.empty()) {
    budget.note("no blue vertex: empty support");
    res.trace = std::move(trace);
    return res;
  }
  detail::warn_blueless(w, budget);
  for (const Subgraph& h : w.family_h) {
    VertexSet b;
    for (VertexId v : h.vertices) {
      if (w.is_blue(v)) b.insert(v);
    }
    if (!b.empty()) cf.family.push_back(Subgraph{h.label, std::move(b)});
  }
  if (auto ab = is_abab_free(cf); !ab) {
    const auto& x = *ab.witness;
    throw SupportError(ErrorKind::not_cross_free,
                       "subgraphs " + cf.family[x.first].label + " and " + cf.family[x.second].label +
                           " alternate on the blue outer cycle at " + std::to_string(x.vertices[0]) +
                           "," + std::to_string(x.vertices[1]) + "," + std::to_string(x.vertices[2]) +
                           "," + std::to_string(x.vertices[3]),
                       trace);
  }
  budget.step("blue cycle " + std::to_string(cf.order.size()));
  std::vector<std::pair<VertexId, VertexId>> extra;
  for (const Chord& c : connect_all(cf)) {
    budget.step("chord " + std::to_string(c.x) + "-" + std::to_string(c.y));
    extra.push_back({c.x, c.y});
  }
  res.graph = simplify(circle_embedding(cf.order, extra));
  res.trace = std::move(trace);
  return res;
}

struct CriticalChord {
  std::size_t member = 0;  // index into the family
  VertexId u1 = 0;         // last vertex of a run
  VertexId u2 = 0;         // first vertex of the next run
  std::size_t length = 0;  // vertices strictly between u1 and u2, clockwise
};

// Every good chord (last vertex of a run to the first of the next run) of every member.
inline std::vector<CriticalChord> good_chords(const CycleFamily& cf) {
  auto pos = detail::positions(cf.order);
  const std::size_t n = cf.order.size();
  std::vector<CriticalChord> out;
  for (std::size_t i = 0; i < cf.family.size(); ++i) {
    auto rs = runs(cf, cf.family[i].vertices);
    if (rs.size() < 2) continue;
    for (std::size_t r = 0; r < rs.size(); ++r) {
      VertexId a = rs[r].back(), b = rs[(r + 1) % rs.size()].front();
      out.push_back({i, a, b, (pos.at(b) + n - pos.at(a) - 1) % n});
    }
  }
  return out;
}

// Shortest good chord over the family; ties by member label, then endpoints.
inline std::optional<CriticalChord> critical_chord(const CycleFamily& cf) {
  std::optional<CriticalChord> best;
  for (const CriticalChord& c : good_chords(cf)) {
    auto key = [&](const CriticalChord& x) {
      return std::tuple(x.length, cf.family[x.member].label, x.u1, x.u2);
    };
    if (!best || key(c) < key(*best)) best = c;
  }
  return best;
}

namespace detail {

struct Member {
  VertexId id;
  std::string label;
  VertexSet vertices;
};

// Support drawn on a circle: each id once, straight non-crossing edges.
struct Layout {
  std::vector<VertexId> order;
  std::set<std::pair<VertexId, VertexId>> edges;

  void add(VertexId a, VertexId b) {
    if (a != b) edges.insert(std::minmax(a, b));
  }
};

// Single-run members, cycled in order of the last vertex of their run (ties by label).
inline Layout base_layout(const std::vector<VertexId>& cycle, const std::vector<Member>& members) {
  auto pos = positions(cycle);
  CycleFamily cf{cycle, {}};
  std::vector<std::tuple<std::size_t, std::string, VertexId>> keyed;
  for (const Member& m : members) {
    auto rs = runs(cf, m.vertices);
    if (rs.size() != 1) {
      throw SupportError(ErrorKind::internal,
                         "member " + m.label + " has " + std::to_string(rs.size()) +
                             " runs in a base case");
    }
    keyed.emplace_back(pos.at(rs.front().back()), m.label, m.id);
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
    if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) < std::get<0>(y);
    return label_less(std::get<1>(x), std::get<1>(y));
  });
  Layout out;
  for (const auto& k : keyed) out.order.push_back(std::get<2>(k));
  const std::size_t n = out.order.size();
  for (std::size_t i = 0; n >= 2 && i < n; ++i) out.add(out.order[i], out.order[(i + 1) % n]);
  return out;
}

// Inserts `block` right after `at`; the block's edges only touch the block and `at`.
inline void splice_after(Layout& into, VertexId at, const Layout& block) {
  auto it = std::find(into.order.begin(), into.order.end(), at);
  into.order.insert(std::next(it), block.order.begin(), block.order.end());
  into.edges.insert(block.edges.begin(), block.edges.end());
}

inline Layout outerplanar_dual_rec(const std::vector<VertexId>& cycle, std::vector<Member> members,
                                   Budget& budget) {
  std::vector<Subgraph> fam;
  for (const Member& m : members) fam.push_back(Subgraph{m.label, m.vertices});
  auto [kept_fam, plan] = remove_containments(fam);
  std::vector<Member> kept;
  for (std::size_t i : plan.kept) kept.push_back(members[i]);

  CycleFamily cf{cycle, kept_fam};
  if (auto ax = is_axax_free(cf); !ax) {
    const auto& x = *ax.witness;
    throw SupportError(ErrorKind::piercing,
                       "subgraphs " + cf.family[x.first].label + " and " + cf.family[x.second].label +
                           " show a,x,a,x on the outer cycle at " + std::to_string(x.vertices[0]) +
                           "," + std::to_string(x.vertices[1]) + "," + std::to_string(x.vertices[2]) +
                           "," + std::to_string(x.vertices[3]),
                       budget.trace());
  }

  Layout out;
  std::optional<CriticalChord> crit = critical_chord(cf);
  if (!crit) {
    budget.step("base " + std::to_string(kept.size()) + " members on " +
                std::to_string(cycle.size()) + " vertices");
    out = base_layout(cycle, kept);
  } else {
    const Member& h = kept[crit->member];
    budget.step("critical chord " + std::to_string(crit->u1) + "-" + std::to_string(crit->u2) +
                " of " + h.label + " length " + std::to_string(crit->length));
    // C_R = u1, the arc without h, u2; C_L = u2 .. u1.
    auto pos = positions(cycle);
    const std::size_t n = cycle.size();
    std::vector<VertexId> right, left;
    for (std::size_t i = pos.at(crit->u1);; i = (i + 1) % n) {
      right.push_back(cycle[i]);
      if (cycle[i] == crit->u2) break;
    }
    for (std::size_t i = pos.at(crit->u2);; i = (i + 1) % n) {
      left.push_back(cycle[i]);
      if (cycle[i] == crit->u1) break;
    }
    const VertexSet arc(right.begin() + 1, right.end() - 1);
    const VertexSet right_set(right.begin(), right.end());
    std::vector<Member> in_left, in_right;
    for (const Member& m : kept) {
      if (m.id == h.id) {
        in_left.push_back(m);
        in_right.push_back(Member{m.id, m.label, {crit->u1, crit->u2}});
      } else if (intersects(m.vertices, arc)) {
        in_right.push_back(Member{m.id, m.label, set_intersection(m.vertices, right_set)});
      } else {
        in_left.push_back(m);
      }
    }
    out = outerplanar_dual_rec(left, std::move(in_left), budget);
    Layout r = base_layout(right, in_right);
    for (const Member& m : in_right) r.add(h.id, m.id);
    // Rotate so h leads, then splice the rest in right after h.
    auto it = std::find(r.order.begin(), r.order.end(), h.id);
    std::rotate(r.order.begin(), it, r.order.end());
    r.order.erase(r.order.begin());
    splice_after(out, h.id, r);
  }

  // Contained members hang off their successor, placed right after it.
  std::map<std::size_t, std::size_t> pending = plan.successor;
  std::set<VertexId> placed(out.order.begin(), out.order.end());
  while (!pending.empty()) {
    bool progress = false;
    for (auto it = pending.begin(); it != pending.end();) {
      VertexId child = members[it->first].id, parent = members[it->second].id;
      if (!placed.count(parent)) {
        ++it;
        continue;
      }
      Layout pendant;
      pendant.order = {child};
      pendant.add(parent, child);
      splice_after(out, parent, pendant);
      placed.insert(child);
      budget.step("pendant " + members[it->first].label + " on " + members[it->second].label);
      it = pending.erase(it);
      progress = true;
    }
    if (!progress) throw SupportError(ErrorKind::internal, "containment successors form a cycle");
  }
  return out;
}

}  // namespace detail

// Dual support drawn as a circle with non-crossing chords; support vertex i is family_h[i].
inline SupportResult dual_outerplanar(const GraphSystem& sys, const BuildOptions& opt = {}) {
  validate_system(sys);
  GraphSystem w = sys;
  w.family_k.reset();
  w.coloring.clear();
  if (auto np = is_non_piercing(w); !np) {
    const auto& x = *np.witness;
    std::string what = x.first == x.second
                           ? "subgraph " + w.family_h[x.first].label + " is disconnected"
                           : w.family_h[x.first].label + " minus " + w.family_h[x.second].label +
                                 " is disconnected";
    throw SupportError(ErrorKind::piercing,
                       "system is piercing (" + what +
                           "); cross-free alone does not guarantee an outerplanar dual support, "
                           "as the asteroidal triple shows");
  }
  const std::vector<VertexId> cycle = outer_order(w);
  std::vector<std::string> trace;
  detail::Budget budget(opt.cap.value_or(default_cap(sys)), trace);

  std::vector<detail::Member> members;
  for (std::size_t i = 0; i < w.family_h.size(); ++i) {
    members.push_back({static_cast<VertexId>(i), w.family_h[i].label, w.family_h[i].vertices});
  }
  SupportResult res;
  res.kind = SupportKind::dual;
  res.has_rotation = true;
  for (std::size_t i = 0; i < w.family_h.size(); ++i) {
    res.labels[static_cast<VertexId>(i)] = w.family_h[i].label;
  }
  if (!members.empty()) {
    detail::Layout lay = detail::outerplanar_dual_rec(cycle, std::move(members), budget);
    std::vector<std::pair<VertexId, VertexId>> extra(lay.edges.begin(), lay.edges.end());
    res.graph = circle_embedding(lay.order, extra, false);
  }
  res.trace = std::move(trace);
  return res;
}

}  // namespace supports
