#pragma once

// Primal, dual, and intersection supports for cross-free systems on embedded hosts.
// Every construction only bypasses vertices and contracts or deletes edges, so the emitted
// rotation is a certificate of genus at most the host's.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "supports/graph_system.hpp"
#include "supports/rotation_graph.hpp"
#include "supports/support_result.hpp"
#include "supports/vertex_bypass.hpp"

namespace supports {

namespace detail {

class Budget {
 public:
  Budget(std::size_t cap, std::vector<std::string>& trace) : cap_(cap), trace_(trace) {}

  bool audit = false;
  int genus_bound = 0;

  [[noreturn]] void fail(const std::string& what) {
    throw SupportError(ErrorKind::internal, "audit: " + what, trace_);
  }

  void step(std::string what) {
    trace_.push_back(std::move(what));
    if (++used_ > cap_) {
      throw SupportError(ErrorKind::cap_exceeded,
                         "iteration cap of " + std::to_string(cap_) + " operations exceeded", trace_);
    }
  }
  void note(std::string what) { trace_.push_back(std::move(what)); }
  std::vector<std::string>& trace() { return trace_; }

 private:
  std::size_t cap_;
  std::size_t used_ = 0;
  std::vector<std::string>& trace_;
};

inline void require_embedded(const GraphSystem& sys) {
  if (!sys.embedded) {
    throw SupportError(ErrorKind::precondition, "construction needs an embedded host (rotation lines)");
  }
}

inline void require_cross_free(const GraphSystem& sys) {
  CrossFreeResult r = is_cross_free(sys);
  if (r) return;
  const CrossWitness& w = *r.witness;
  const auto& fam = w.k_family ? *sys.family_k : sys.family_h;
  std::string darts;
  for (DartId d : w.darts) darts += " " + std::to_string(dart_edge(d));
  throw SupportError(ErrorKind::not_cross_free, "subgraphs " + fam[w.first].label + " and " +
                                                    fam[w.second].label + " cross at vertex " +
                                                    std::to_string(w.vertex) + " (edges" + darts + ")");
}

// Runs a bypass, attaching the construction trace to any failure.
template <typename F>
inline BypassResult traced(Budget& budget, F&& f) {
  try {
    return f();
  } catch (const SupportError& e) {
    if (!e.trace().empty()) throw;
    throw SupportError(e.kind(), e.what(), budget.trace());
  }
}

inline void arm(Budget& budget, const BuildOptions& opt, const GraphSystem& sys) {
  budget.audit = opt.audit;
  if (opt.audit) budget.genus_bound = euler_genus(sys.host);
}

// Step audit: connected members, genus not above the input's, and optionally a cross-free
// embedding (contracting non-maximal red vertices need not preserve it).
inline void audit_state(const GraphSystem& w, Budget& budget, bool check_k, bool check_cross = true) {
  if (!budget.audit) return;
  audit(w.host);
  auto adj = adjacency(w.host);
  for (const Subgraph& h : w.family_h) {
    if (!induces_connected(adj, h.vertices)) budget.fail("subgraph " + h.label + " split");
  }
  if (check_k && w.family_k) {
    for (const Subgraph& k : *w.family_k) {
      if (!induces_connected(adj, k.vertices)) budget.fail("K member " + k.label + " split");
    }
  }
  if (check_cross) {
    GraphSystem h_only = w;
    h_only.family_k.reset();
    if (auto cf = is_cross_free(h_only); !cf) {
      const CrossWitness& x = *cf.witness;
      budget.fail("system stopped being cross-free: " + w.family_h[x.first].label + " and " +
                  w.family_h[x.second].label + " cross at " + std::to_string(x.vertex));
    }
  }
  if (euler_genus(w.host) > budget.genus_bound) budget.fail("genus grew");
}

inline std::pair<std::size_t, std::size_t> depth_profile(const GraphSystem& w) {
  std::size_t d = 0, n = 0;
  for (VertexId x : w.host.vertices()) {
    std::size_t dx = members_at(w.family_h, x).size();
    if (dx > d) {
      d = dx;
      n = 0;
    }
    if (dx == d) ++n;
  }
  return {d, n};
}

inline void erase_everywhere(GraphSystem& w, VertexId v) {
  for (auto& h : w.family_h) h.vertices.erase(v);
  if (w.family_k) {
    for (auto& k : *w.family_k) k.vertices.erase(v);
  }
  w.coloring.erase(v);
}

// Contracts e into `keep`; every member through the removed endpoint already contains keep
// whenever H_e equals that endpoint's set.
inline void contract_into(GraphSystem& w, EdgeId e, VertexId keep) {
  VertexId gone = w.host.edge(e).other(keep);
  if (w.family_k) {
    for (auto& k : *w.family_k) {
      if (k.vertices.count(gone)) k.vertices.insert(keep);
    }
  }
  w.host = contract_edge(w.host, e, keep);
  erase_everywhere(w, gone);
}

enum class RedMode { contract_only, bypass, bypass_by_component };

inline std::optional<EdgeId> equal_set_edge(const GraphSystem& w, VertexId v) {
  const auto hv = members_at(w.family_h, v);
  std::optional<EdgeId> best;
  bool best_blue = false;
  for (DartId d : w.host.rotation(v)) {
    EdgeId e = dart_edge(d);
    const Edge& ed = w.host.edge(e);
    if (ed.is_loop()) continue;
    VertexId x = ed.other(v);
    if (members_at(w.family_h, x) != hv) continue;
    bool blue = w.is_blue(x);
    if (!best || (blue && !best_blue) || (blue == best_blue && e < *best)) {
      best = e;
      best_blue = blue;
    }
  }
  return best;
}

// Removes red vertices until none remain:
//  1. a maximal red vertex is bypassed (an error under contract_only);
//  2. a red vertex with a neighbor of equal set is contracted into it;
//  3. otherwise each red v picks an edge with H_e = H_v, which leads to a strict superset or a
//     blue vertex, and every resulting tree is contracted into its blue root.
// Step 2 keeps the embedding cross-free, since both endpoints lie in exactly the same members.
inline GraphSystem reduce_red(GraphSystem w, RedMode mode, Budget& budget) {
  const bool cross_audit = mode != RedMode::bypass_by_component;
  for (;;) {
    std::optional<VertexId> maximal;
    for (VertexId v : w.host.vertices()) {
      if (w.is_red(v) && is_maximal_in(w.host, w.family_h, v)) {
        maximal = v;
        break;
      }
    }
    if (maximal) {
      if (mode == RedMode::contract_only) {
        throw SupportError(ErrorKind::precondition,
                           "red vertex " + std::to_string(*maximal) + " is maximal", budget.trace());
      }
      BypassResult r = traced(budget, [&] {
        return mode == RedMode::bypass ? bypass_detailed(w, *maximal)
                                       : bypass_by_component_detailed(w, *maximal);
      });
      budget.step("bypass " + std::to_string(*maximal) + " cycle " + std::to_string(r.cycle.size()) +
                  " chords " + std::to_string(r.chords.size()));
      w = std::move(r.system);
      if (budget.audit) {
        for (VertexId u : r.cycle) {
          if (is_maximal_in(w.host, w.family_h, u)) budget.fail("bypass created a maximal red vertex");
        }
      }
      audit_state(w, budget, false, cross_audit);
      continue;
    }

    bool merged = false;
    for (VertexId v : w.host.vertices()) {
      if (!w.is_red(v)) continue;
      if (auto e = equal_set_edge(w, v)) {
        VertexId keep = w.host.edge(*e).other(v);
        contract_into(w, *e, keep);
        budget.step("merge " + std::to_string(v) + "->" + std::to_string(keep));
        audit_state(w, budget, false, cross_audit);
        merged = true;
        break;
      }
    }
    if (merged) continue;

    // Forest phase, decided on one snapshot of the graph.
    std::vector<std::pair<VertexId, EdgeId>> arcs;
    std::vector<VertexId> isolated;
    for (VertexId v : w.host.vertices()) {
      if (!w.is_red(v)) continue;
      const std::size_t dv = members_at(w.family_h, v).size();
      std::optional<EdgeId> best;
      bool best_blue = false;
      for (DartId d : w.host.rotation(v)) {
        EdgeId e = dart_edge(d);
        const Edge& ed = w.host.edge(e);
        if (ed.is_loop() || members_at_edge(w.family_h, ed).size() != dv) continue;
        bool blue = w.is_blue(ed.other(v));
        if (!best || (blue && !best_blue) || (blue == best_blue && e < *best)) {
          best = e;
          best_blue = blue;
        }
      }
      if (best) {
        arcs.push_back({v, *best});
      } else {
        isolated.push_back(v);
      }
    }
    for (VertexId v : isolated) {
      w.host.remove_vertex(v);
      erase_everywhere(w, v);
      budget.step("drop " + std::to_string(v));
    }
    std::map<VertexId, VertexId> image;
    auto find = [&](VertexId x) {
      while (image.count(x)) x = image.at(x);
      return x;
    };
    for (const auto& [v, e] : arcs) {
      VertexId target = find(w.host.edge(e).other(v));
      VertexId gone = find(v);
      if (gone == target) budget.fail("red forest has a cycle");
      contract_into(w, e, target);
      image[gone] = target;
      budget.step("contract " + std::to_string(e) + " " + std::to_string(v) + "->" +
                  std::to_string(target));
    }
    for (VertexId v : w.host.vertices()) {
      if (w.is_red(v)) budget.fail("red vertex " + std::to_string(v) + " survived the forest phase");
    }
    audit_state(w, budget, false, false);
    return w;
  }
}

// Merges every cycle vertex that lies in no subgraph into an adjacent cycle vertex that does.
// Afterwards consecutive cycle vertices either share a subgraph or form a special edge, and
// each special edge {v, v_i} reappears as a special edge at v_i.
inline void absorb_empty_cycle_vertices(GraphSystem& w, const std::vector<VertexId>& cycle,
                                        Budget& budget) {
  VertexSet on_cycle(cycle.begin(), cycle.end());
  VertexSet pending;
  for (VertexId u : cycle) {
    if (members_at(w.family_h, u).empty()) pending.insert(u);
  }
  while (!pending.empty()) {
    bool progress = false;
    for (VertexId u : VertexSet(pending)) {
      std::optional<EdgeId> best;
      for (DartId d : w.host.rotation(u)) {
        EdgeId e = dart_edge(d);
        const Edge& ed = w.host.edge(e);
        VertexId x = ed.other(u);
        if (ed.is_loop() || !on_cycle.count(x) || pending.count(x)) continue;
        if (!best || e < *best) best = e;
      }
      if (!best) continue;
      VertexId keep = w.host.edge(*best).other(u);
      contract_into(w, *best, keep);
      pending.erase(u);
      on_cycle.erase(u);
      progress = true;
      budget.step("absorb " + std::to_string(u) + "->" + std::to_string(keep));
    }
    if (!progress) {
      throw SupportError(ErrorKind::internal, "bypass cycle has no vertex inside a subgraph",
                         budget.trace());
    }
  }
}

inline SupportResult primal_result(const GraphSystem& w, std::vector<std::string> trace) {
  SupportResult res;
  res.kind = SupportKind::primal;
  res.graph = simplify(w.host);
  res.graph.canonicalize();
  res.has_rotation = true;
  res.trace = std::move(trace);
  return res;
}

inline void warn_blueless(const GraphSystem& sys, Budget& budget) {
  for (const Subgraph& h : sys.family_h) {
    bool blue = std::any_of(h.vertices.begin(), h.vertices.end(),
                            [&](VertexId v) { return sys.is_blue(v); });
    if (!blue) budget.note("warning: subgraph " + h.label + " has no blue vertex; skipped");
  }
}

// Dual construction on a system already known to be cross-free. Support vertex i stands for
// sys.family_h[i].
inline SupportResult dual_impl(const GraphSystem& sys, Budget& budget) {
  auto [fam, plan] = remove_containments(sys.family_h);
  for (const auto& [dropped, succ] : plan.successor) {
    budget.note("contained " + sys.family_h[dropped].label + " in " + sys.family_h[succ].label);
  }
  GraphSystem w;
  w.host = sys.host;
  w.embedded = true;
  w.family_h = fam;

  audit_state(w, budget, false);
  for (;;) {
    std::size_t d = 0;
    std::optional<VertexId> v;
    for (VertexId x : w.host.vertices()) {
      std::size_t dx = members_at(w.family_h, x).size();
      if (dx > d) {
        d = dx;
        v = x;
      }
    }
    if (d <= 1) break;
    const auto before = depth_profile(w);
    std::optional<EdgeId> full;
    for (DartId dd : w.host.rotation(*v)) {
      EdgeId e = dart_edge(dd);
      const Edge& ed = w.host.edge(e);
      if (ed.is_loop() || members_at_edge(w.family_h, ed).size() != d) continue;
      if (!full || e < *full) full = e;
    }
    if (full) {
      VertexId keep = w.host.edge(*full).other(*v);
      contract_into(w, *full, keep);
      budget.step("contract " + std::to_string(*full) + " " + std::to_string(*v) + "->" +
                  std::to_string(keep));
    } else {
      BypassResult r = traced(budget, [&] { return bypass_detailed(w, *v); });
      budget.step("bypass " + std::to_string(*v) + " depth " + std::to_string(d) + " cycle " +
                  std::to_string(r.cycle.size()) + " chords " + std::to_string(r.chords.size()));
      w = std::move(r.system);
      absorb_empty_cycle_vertices(w, r.cycle, budget);
    }
    audit_state(w, budget, false);
    if (budget.audit && !(depth_profile(w) < before)) budget.fail("(d, n_d) did not decrease");
  }

  // Depth at most one: contract each subgraph to one vertex, then absorb uncovered vertices.
  std::map<VertexId, std::size_t> owner;
  for (std::size_t i = 0; i < w.family_h.size(); ++i) {
    for (VertexId x : w.family_h[i].vertices) owner[x] = i;
  }
  RotationGraph g = w.host;
  for (;;) {
    std::optional<EdgeId> pick;
    for (const auto& [e, ed] : g.edges()) {
      if (ed.is_loop()) continue;
      auto ia = owner.find(ed.a), ib = owner.find(ed.b);
      if (ia != owner.end() && ib != owner.end() && ia->second == ib->second) {
        pick = e;
        break;
      }
    }
    if (!pick) break;
    const Edge ed = g.edge(*pick);
    VertexId keep = std::min(ed.a, ed.b);
    g = contract_edge(g, *pick, keep);
    owner.erase(std::max(ed.a, ed.b));
  }
  for (;;) {
    std::optional<VertexId> z;
    for (VertexId x : g.vertices()) {
      if (!owner.count(x)) {
        z = x;
        break;
      }
    }
    if (!z) break;
    std::optional<EdgeId> along;
    for (DartId dd : g.rotation(*z)) {
      EdgeId e = dart_edge(dd);
      if (!g.edge(e).is_loop() && (!along || e < *along)) along = e;
    }
    if (along) {
      g = contract_edge(g, *along, g.edge(*along).other(*z));
    } else {
      g.remove_vertex(*z);
    }
  }
  if (g.vertex_count() != w.family_h.size()) {
    throw SupportError(ErrorKind::internal, "depth-one contraction left a subgraph split", budget.trace());
  }
  std::map<VertexId, VertexId> rename;
  for (const auto& [x, i] : owner) rename[x] = static_cast<VertexId>(plan.kept[i]);
  g = relabel_vertices(simplify(g), rename);
  budget.note("base " + std::to_string(g.vertex_count()) + " vertices " +
              std::to_string(g.edge_count()) + " edges");

  // Each contained subgraph hangs off its successor; successors are placed first.
  std::vector<std::pair<std::size_t, std::size_t>> pending(plan.successor.begin(), plan.successor.end());
  while (!pending.empty()) {
    std::vector<std::pair<std::size_t, std::size_t>> later;
    for (const auto& [j, s] : pending) {
      if (!g.has_vertex(static_cast<VertexId>(s))) {
        later.push_back({j, s});
        continue;
      }
      g.add_vertex(static_cast<VertexId>(j));
      g.add_edge(static_cast<VertexId>(s), static_cast<VertexId>(j));
    }
    if (later.size() == pending.size()) {
      throw SupportError(ErrorKind::internal, "containment successors form a cycle", budget.trace());
    }
    pending = std::move(later);
  }
  g.canonicalize();

  SupportResult res;
  res.kind = SupportKind::dual;
  res.graph = std::move(g);
  res.has_rotation = true;
  for (std::size_t i = 0; i < sys.family_h.size(); ++i) {
    res.labels[static_cast<VertexId>(i)] = sys.family_h[i].label;
  }
  return res;
}

}  // namespace detail

// Contracts red vertices along edges that carry their whole subgraph set. Fails when a red
// vertex is maximal.
inline SupportResult eliminate_nonmaximal_red(const GraphSystem& sys, const BuildOptions& opt = {}) {
  std::vector<std::string> trace;
  detail::Budget budget(opt.cap.value_or(default_cap(sys)), trace);
  detail::arm(budget, opt, sys);
  GraphSystem w = sys;
  w.family_k.reset();
  w = detail::reduce_red(std::move(w), detail::RedMode::contract_only, budget);
  return detail::primal_result(w, std::move(trace));
}

// Bypasses maximal red vertices and contracts the rest; the support lives on blue host vertices.
inline SupportResult primal_support(const GraphSystem& sys, const BuildOptions& opt = {}) {
  detail::require_embedded(sys);
  validate_system(sys);
  GraphSystem w = sys;
  w.family_k.reset();
  detail::require_cross_free(w);
  std::vector<std::string> trace;
  detail::Budget budget(opt.cap.value_or(default_cap(sys)), trace);
  detail::arm(budget, opt, sys);
  detail::warn_blueless(w, budget);
  w = detail::reduce_red(std::move(w), detail::RedMode::bypass, budget);
  return detail::primal_result(w, std::move(trace));
}

inline SupportResult dual_support(const GraphSystem& sys, const BuildOptions& opt = {}) {
  detail::require_embedded(sys);
  validate_system(sys);
  GraphSystem w = sys;
  w.family_k.reset();
  w.coloring.clear();
  detail::require_cross_free(w);
  std::vector<std::string> trace;
  detail::Budget budget(opt.cap.value_or(default_cap(sys)), trace);
  detail::arm(budget, opt, sys);
  SupportResult res = detail::dual_impl(w, budget);
  res.trace = std::move(trace);
  return res;
}

// Support on H in which the members meeting each K induce a connected subgraph.
inline SupportResult intersection_support(const GraphSystem& sys, const BuildOptions& opt = {}) {
  detail::require_embedded(sys);
  validate_system(sys);
  require_k(sys);
  GraphSystem w = sys;
  w.coloring.clear();
  detail::require_cross_free(w);
  std::vector<std::string> trace;
  detail::Budget budget(opt.cap.value_or(default_cap(sys)), trace);
  detail::arm(budget, opt, sys);

  for (;;) {
    std::optional<VertexId> pick;
    std::size_t pick_depth = 0;
    for (VertexId v : w.host.vertices()) {
      if (!k_vertex_maximal(w, v)) continue;
      std::size_t dk = members_at(*w.family_k, v).size();
      if (dk > pick_depth) {
        pick = v;
        pick_depth = dk;
      }
    }
    if (!pick) break;
    BypassResult r = detail::traced(budget, [&] { return bypass_tracking_k_detailed(w, *pick); });
    budget.step("bypass-k " + std::to_string(*pick) + " depth " + std::to_string(pick_depth) +
                " cycle " + std::to_string(r.cycle.size()));
    w = std::move(r.system);
  }

  const std::size_t m = w.family_h.size();
  GraphSystem with_dummies;
  with_dummies.host = w.host;
  with_dummies.embedded = true;
  with_dummies.family_h = w.family_h;
  for (VertexId u : k_vertices(w)) {
    with_dummies.family_h.push_back(Subgraph{"__dummy_" + std::to_string(u), {u}});
  }
  budget.note("dummies " + std::to_string(with_dummies.family_h.size() - m));
  SupportResult dual = detail::dual_impl(with_dummies, budget);

  GraphSystem q;
  q.host = dual.graph;
  q.embedded = true;
  for (const Subgraph& k : *w.family_k) {
    Subgraph hk{k.label, {}};
    for (std::size_t i = 0; i < with_dummies.family_h.size(); ++i) {
      if (intersects(with_dummies.family_h[i].vertices, k.vertices)) {
        hk.vertices.insert(static_cast<VertexId>(i));
      }
    }
    q.family_h.push_back(std::move(hk));
  }
  for (VertexId x : q.host.vertices()) {
    q.coloring[x] = static_cast<std::size_t>(x) < m ? Color::blue : Color::red;
  }
  q = detail::reduce_red(std::move(q), detail::RedMode::bypass_by_component, budget);

  SupportResult res = detail::primal_result(q, std::move(trace));
  res.kind = SupportKind::intersection;
  for (std::size_t i = 0; i < m; ++i) res.labels[static_cast<VertexId>(i)] = sys.family_h[i].label;
  return res;
}

}  // namespace supports
