#pragma once

// Supports of width O(2^t) for non-piercing systems on hosts with a width-t decomposition.
// The primal side turns the decomposition into an easy one (every subgraph crossing an adhesion
// meets it in a blue vertex); the dual side pushes subgraphs out of adhesions until each bag
// meets few distinct subgraphs.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "supports/genus_support.hpp"
#include "supports/graph_system.hpp"
#include "supports/support_result.hpp"
#include "supports/tree_decomposition.hpp"

namespace supports {

// G_u, G'_u and A_{uv} for every non-root node u of a fixed decomposition.
struct Sides {
  std::map<NodeId, VertexSet> below;
  std::map<NodeId, VertexSet> above;
  std::map<NodeId, VertexSet> adhesion;
};

inline Sides sides(const TreeDecomposition& td) {
  Sides out;
  const std::vector<NodeId> pre = td.preorder();
  auto ch = td.child_map();
  std::map<NodeId, std::size_t> first;
  std::map<NodeId, std::size_t> size;
  for (std::size_t i = 0; i < pre.size(); ++i) first[pre[i]] = i;
  for (auto it = pre.rbegin(); it != pre.rend(); ++it) {
    std::size_t s = 1;
    for (NodeId c : ch[*it]) s += size[c];
    size[*it] = s;
  }
  for (NodeId u : pre) {
    if (u == td.root) continue;
    VertexSet in, out_set;
    for (std::size_t i = 0; i < pre.size(); ++i) {
      const VertexSet& b = td.bags.at(pre[i]);
      bool inside = i >= first[u] && i < first[u] + size[u];
      (inside ? in : out_set).insert(b.begin(), b.end());
    }
    out.below[u] = std::move(in);
    out.above[u] = std::move(out_set);
    out.adhesion[u] = td.adhesion(u);
  }
  return out;
}

// Nonempty traces H ∩ a over the family, by cardinality and then lexicographically. Subsets of
// `a` that are no member's trace have no members to process and are skipped.
inline std::vector<VertexSet> realized_traces(const std::vector<Subgraph>& fam, const VertexSet& a) {
  std::set<std::vector<VertexId>> seen;
  for (const Subgraph& h : fam) {
    VertexSet t = set_intersection(h.vertices, a);
    if (!t.empty()) seen.insert(std::vector<VertexId>(t.begin(), t.end()));
  }
  std::vector<std::vector<VertexId>> all(seen.begin(), seen.end());
  std::stable_sort(all.begin(), all.end(),
                   [](const auto& x, const auto& y) { return x.size() < y.size(); });
  std::vector<VertexSet> out;
  for (const auto& t : all) out.emplace_back(t.begin(), t.end());
  return out;
}

inline VertexSet blue_part(const GraphSystem& sys, const VertexSet& s) {
  VertexSet out;
  for (VertexId v : s)
    if (sys.is_blue(v)) out.insert(v);
  return out;
}

inline std::string set_text(const VertexSet& s) {
  std::string out = "{";
  for (VertexId v : s) out += (out.size() > 1 ? "," : "") + std::to_string(v);
  return out + "}";
}

// H'_S at adhesion u: members with trace exactly S and blue vertices on both sides.
inline std::vector<std::size_t> crossing_members(const GraphSystem& sys, const Sides& sd, NodeId u,
                                                 const VertexSet& s) {
  std::vector<std::size_t> out;
  const VertexSet& a = sd.adhesion.at(u);
  for (std::size_t i = 0; i < sys.family_h.size(); ++i) {
    const VertexSet& h = sys.family_h[i].vertices;
    if (set_intersection(h, a) != s) continue;
    if (blue_part(sys, set_intersection(h, sd.below.at(u))).empty()) continue;
    if (blue_part(sys, set_intersection(h, sd.above.at(u))).empty()) continue;
    out.push_back(i);
  }
  return out;
}

// Members of `cand` whose trace on `side` is inclusion-minimal, in label order.
inline std::vector<std::size_t> minimal_members(const std::vector<Subgraph>& fam,
                                                const std::vector<std::size_t>& cand,
                                                const VertexSet& side) {
  std::vector<std::size_t> out;
  for (std::size_t i : cand) {
    VertexSet ti = set_intersection(fam[i].vertices, side);
    bool minimal = true;
    for (std::size_t j : cand) {
      VertexSet tj = set_intersection(fam[j].vertices, side);
      if (tj != ti && is_subset(tj, ti)) minimal = false;
    }
    if (minimal) out.push_back(i);
  }
  std::sort(out.begin(), out.end(),
            [&](std::size_t x, std::size_t y) { return label_less(fam[x].label, fam[y].label); });
  return out;
}

// Red-only traces on the adhesion at u.
inline std::vector<VertexSet> red_subsets(const GraphSystem& sys, const Sides& sd, NodeId u) {
  std::vector<VertexSet> out;
  for (VertexSet& t : realized_traces(sys.family_h, sd.adhesion.at(u))) {
    if (blue_part(sys, t).empty()) out.push_back(std::move(t));
  }
  return out;
}

// For every adhesion of `original` and every red-only S with H'_S nonempty, some minimal member
// meets the blue part of the corresponding adhesion of `augmented`.
inline bool has_bottom_up_property(const GraphSystem& sys, const TreeDecomposition& original,
                                   const TreeDecomposition& augmented) {
  const Sides sd = sides(original);
  for (const auto& [u, a] : sd.adhesion) {
    VertexSet now = blue_part(sys, set_intersection(augmented.bags.at(u),
                                                    augmented.bags.at(original.parent.at(u))));
    for (const VertexSet& s : red_subsets(sys, sd, u)) {
      auto cand = crossing_members(sys, sd, u, s);
      if (cand.empty()) continue;
      bool ok = false;
      for (std::size_t i : minimal_members(sys.family_h, cand, sd.below.at(u))) {
        ok = ok || intersects(sys.family_h[i].vertices, now);
      }
      if (!ok) return false;
    }
  }
  return true;
}

// Every subgraph meeting an adhesion, with blue vertices on both of its sides, meets it in a
// blue vertex.
inline bool is_easy(const GraphSystem& sys, const TreeDecomposition& td) {
  const Sides sd = sides(td);
  for (const auto& [u, a] : sd.adhesion) {
    VertexSet blue_a = blue_part(sys, a);
    for (const Subgraph& h : sys.family_h) {
      if (!intersects(h.vertices, a) || intersects(h.vertices, blue_a)) continue;
      if (blue_part(sys, set_intersection(h.vertices, sd.below.at(u))).empty()) continue;
      if (blue_part(sys, set_intersection(h.vertices, sd.above.at(u))).empty()) continue;
      return false;
    }
  }
  return true;
}

namespace detail {

inline void require_non_piercing(const GraphSystem& w) {
  if (auto np = is_non_piercing(w); !np) {
    const auto& x = *np.witness;
    std::string what = x.first == x.second
                           ? "subgraph " + w.family_h[x.first].label + " is disconnected"
                           : w.family_h[x.first].label + " minus " + w.family_h[x.second].label +
                                 " is disconnected";
    throw SupportError(ErrorKind::piercing, "system is piercing: " + what);
  }
}

inline TreeDecomposition bottom_up_augment(const GraphSystem& sys, const TreeDecomposition& td,
                                           Budget& budget) {
  TreeDecomposition out = td;
  const Sides sd = sides(td);
  for (NodeId u : td.postorder()) {
    if (u == td.root) continue;
    const NodeId v = td.parent.at(u);
    for (const VertexSet& s : red_subsets(sys, sd, u)) {
      auto cand = crossing_members(sys, sd, u, s);
      if (cand.empty()) continue;
      auto minimal = minimal_members(sys.family_h, cand, sd.below.at(u));
      VertexSet now = blue_part(sys, set_intersection(out.bags.at(u), out.bags.at(v)));
      bool held = false;
      for (std::size_t i : minimal) held = held || intersects(sys.family_h[i].vertices, now);
      if (held) continue;
      std::optional<VertexId> beta;
      std::size_t from = 0;
      for (std::size_t i : minimal) {
        VertexSet b = blue_part(sys, set_intersection(sys.family_h[i].vertices, out.bags.at(u)));
        if (!b.empty()) {
          beta = *b.begin();
          from = i;
          break;
        }
      }
      if (!beta) {
        budget.fail("bottom-up: no minimal member for S=" + set_text(s) + " at node " +
                    std::to_string(u) + " has a blue vertex in its bag");
      }
      out.bags[v].insert(*beta);
      budget.step("bottom-up: node " + std::to_string(u) + " S=" + set_text(s) + " lifts " +
                  std::to_string(*beta) + " of " + sys.family_h[from].label + " into node " +
                  std::to_string(v));
    }
  }
  return out;
}

inline TreeDecomposition top_down_augment(const GraphSystem& sys, const TreeDecomposition& td,
                                          const TreeDecomposition& lifted, Budget& budget) {
  TreeDecomposition out = lifted;
  const Sides sd = sides(td);
  for (NodeId u : td.preorder()) {
    if (u == td.root) continue;
    const NodeId v = td.parent.at(u);
    for (const VertexSet& s : red_subsets(sys, sd, u)) {
      VertexSet now = blue_part(sys, set_intersection(out.bags.at(u), out.bags.at(v)));
      std::vector<std::size_t> unmet;
      for (std::size_t i : crossing_members(sys, sd, u, s)) {
        if (!intersects(sys.family_h[i].vertices, now)) unmet.push_back(i);
      }
      if (unmet.empty()) continue;
      VertexSet common = blue_part(sys, out.bags.at(v));
      for (std::size_t i : unmet) common = set_intersection(common, sys.family_h[i].vertices);
      if (common.empty()) {
        budget.fail("top-down: no blue vertex of node " + std::to_string(v) +
                    " lies in every unmet member for S=" + set_text(s) + " at node " +
                    std::to_string(u) + "; input failed the non-piercing audit");
      }
      VertexId beta = *common.begin();
      out.bags[u].insert(beta);
      budget.step("top-down: node " + std::to_string(u) + " S=" + set_text(s) + " pulls " +
                  std::to_string(beta) + " from node " + std::to_string(v));
    }
  }
  return out;
}

// Normalized decomposition of the chordal completion, with the system moved onto it.
inline std::pair<GraphSystem, TreeDecomposition> completed(const GraphSystem& sys,
                                                           const TreeDecomposition& td) {
  TreeDecomposition n = validate_and_normalize(td, sys.host);
  GraphSystem w = sys;
  w.family_k.reset();
  w.host = chordal_complete(sys.host, n);
  w.embedded = false;
  w.outer_face.clear();
  return {w, n};
}

}  // namespace detail

// `td` must be a valid decomposition of the (chordally completed) host of `sys`.
inline TreeDecomposition bottom_up_augment(const GraphSystem& sys, const TreeDecomposition& td) {
  std::vector<std::string> trace;
  detail::Budget budget(default_cap(sys), trace);
  return detail::bottom_up_augment(sys, td, budget);
}

// `lifted` is the bottom-up augmentation of `td`.
inline TreeDecomposition top_down_augment(const GraphSystem& sys, const TreeDecomposition& td,
                                          const TreeDecomposition& lifted) {
  std::vector<std::string> trace;
  detail::Budget budget(default_cap(sys), trace);
  return detail::top_down_augment(sys, td, lifted, budget);
}

inline SupportResult primal_tw_support(const GraphSystem& sys, const TreeDecomposition& td,
                                       const BuildOptions& opt = {}) {
  validate_system(sys);
  auto [w, n] = detail::completed(sys, td);
  detail::require_non_piercing(w);
  std::vector<std::string> trace;
  detail::Budget budget(opt.cap.value_or(default_cap(sys)), trace);
  budget.note("input width " + std::to_string(n.width()));
  TreeDecomposition lifted = detail::bottom_up_augment(w, n, budget);
  budget.note("bottom-up width " + std::to_string(lifted.width()));
  TreeDecomposition easy = detail::top_down_augment(w, n, lifted, budget);
  budget.note("top-down width " + std::to_string(easy.width()));
  if (opt.audit && !is_easy(w, easy)) budget.fail("augmented decomposition is not easy");

  SupportResult res;
  res.kind = SupportKind::primal;
  for (VertexId v : sys.host.vertices())
    if (sys.is_blue(v)) res.graph.add_vertex(v);
  std::set<std::pair<VertexId, VertexId>> placed;
  for (auto& [node, bag] : easy.bags) {
    bag = blue_part(w, bag);
    for (auto a = bag.begin(); a != bag.end(); ++a)
      for (auto b = std::next(a); b != bag.end(); ++b)
        if (placed.insert({*a, *b}).second) res.graph.add_edge(*a, *b);
  }
  res.decomposition = std::move(easy);
  res.trace = std::move(trace);
  return res;
}

struct PushRecord {
  std::size_t member = 0;
  std::size_t pusher = 0;
  NodeId node = 0;
  VertexSet before;         // member before the push
  VertexSet pusher_before;  // pusher at the time of the push
};

// Indices refer to the input family. `duplicate_of` maps every member whose final set repeats
// that of a lower-index member to that member.
struct PushOut {
  std::vector<Subgraph> family;
  std::vector<PushRecord> pushes;
  std::map<std::size_t, std::size_t> duplicate_of;

  std::optional<std::size_t> pusher_of(std::size_t i) const {
    for (const PushRecord& r : pushes)
      if (r.member == i) return r.pusher;
    return std::nullopt;
  }
};

// Distinct final sets meeting a bag.
inline std::size_t distinct_in_bag(const PushOut& po, const VertexSet& bag) {
  std::set<VertexSet> seen;
  for (const Subgraph& h : po.family)
    if (intersects(h.vertices, bag)) seen.insert(h.vertices);
  return seen.size();
}

namespace detail {

inline PushOut push_out(const GraphSystem& sys, const TreeDecomposition& td, Budget& budget) {
  PushOut po;
  po.family = sys.family_h;
  std::vector<bool> pushed(po.family.size(), false);
  const Sides sd = sides(td);
  for (NodeId u : td.postorder()) {
    if (u == td.root) continue;
    const VertexSet& a = sd.adhesion.at(u);
    const VertexSet& below = sd.below.at(u);
    for (const VertexSet& s : realized_traces(po.family, a)) {
      std::vector<std::size_t> cand;
      for (std::size_t i = 0; i < po.family.size(); ++i) {
        if (!pushed[i] && set_intersection(po.family[i].vertices, a) == s) cand.push_back(i);
      }
      if (cand.empty()) continue;
      const std::size_t hs = minimal_members(po.family, cand, below).front();
      const VertexSet hs_below = set_intersection(po.family[hs].vertices, below);
      for (std::size_t i = 0; i < po.family.size(); ++i) {
        if (i == hs || pushed[i]) continue;
        VertexSet trace = set_intersection(po.family[i].vertices, a);
        if (trace.empty() || !is_subset(trace, s)) continue;
        VertexSet rest = set_minus(set_intersection(po.family[i].vertices, below), hs_below);
        if (rest.empty()) continue;
        po.pushes.push_back({i, hs, u, po.family[i].vertices, po.family[hs].vertices});
        po.family[i].vertices = std::move(rest);
        pushed[i] = true;
        budget.step("push-out: node " + std::to_string(u) + " S=" + set_text(s) + " " +
                    po.family[hs].label + " pushes out " + po.family[i].label);
      }
    }
  }
  std::map<VertexSet, std::size_t> first;
  for (std::size_t i = 0; i < po.family.size(); ++i) {
    auto [it, fresh] = first.emplace(po.family[i].vertices, i);
    if (!fresh) po.duplicate_of[i] = it->second;
  }
  return po;
}

}  // namespace detail

// `sys` has no containments and `td` is a valid decomposition of its chordally completed host.
inline PushOut push_out(const GraphSystem& sys, const TreeDecomposition& td) {
  std::vector<std::string> trace;
  detail::Budget budget(default_cap(sys), trace);
  return detail::push_out(sys, td, budget);
}

inline SupportResult dual_tw_support(const GraphSystem& sys, const TreeDecomposition& td,
                                     const BuildOptions& opt = {}) {
  validate_system(sys);
  auto [w, n] = detail::completed(sys, td);
  w.coloring.clear();
  detail::require_non_piercing(w);
  std::vector<std::string> trace;
  detail::Budget budget(opt.cap.value_or(default_cap(sys)), trace);
  budget.note("input width " + std::to_string(n.width()));

  auto [reduced, plan] = remove_containments(w);
  PushOut po = detail::push_out(reduced, n, budget);
  auto vid = [&](std::size_t kept) { return static_cast<VertexId>(plan.kept[kept]); };

  SupportResult res;
  res.kind = SupportKind::dual;
  for (std::size_t i = 0; i < sys.family_h.size(); ++i) {
    res.graph.add_vertex(static_cast<VertexId>(i));
    res.labels[static_cast<VertexId>(i)] = sys.family_h[i].label;
  }
  std::set<std::pair<VertexId, VertexId>> placed;
  auto join = [&](VertexId a, VertexId b) {
    if (a != b && placed.insert(std::minmax(a, b)).second) res.graph.add_edge(a, b);
  };

  TreeDecomposition cert;
  cert.root = n.root;
  cert.parent = n.parent;
  for (const auto& [node, bag] : n.bags) {
    VertexSet members;
    for (std::size_t i = 0; i < po.family.size(); ++i) {
      if (!po.duplicate_of.count(i) && intersects(po.family[i].vertices, bag)) members.insert(vid(i));
    }
    for (VertexId a : members)
      for (VertexId b : members) join(a, b);
    cert.bags[node] = std::move(members);
  }
  budget.note("sparse width " + std::to_string(cert.width()));

  NodeId fresh = cert.next_node_id();
  auto attach = [&](VertexId leaf, VertexId anchor, const std::string& why) {
    join(leaf, anchor);
    NodeId host = cert.root;
    for (NodeId x : cert.preorder()) {
      if (cert.bags.at(x).count(anchor)) {
        host = x;
        break;
      }
    }
    cert.bags[fresh] = {leaf, anchor};
    cert.parent[fresh] = host;
    ++fresh;
    budget.step(why + ": " + sys.family_h[leaf].label + " hangs off " + sys.family_h[anchor].label);
  };
  for (const auto& [i, rep] : po.duplicate_of) attach(vid(i), vid(rep), "duplicate");

  // Pushed members join their pusher. When no node holds both, the pusher is threaded along the
  // tree path to the nearest node holding the member.
  for (const PushRecord& r : po.pushes) {
    if (opt.audit && !is_subset(set_minus(r.before, n.below(r.node)), r.pusher_before)) {
      budget.fail(reduced.family_h[r.member].label + " leaves " + reduced.family_h[r.pusher].label +
                  " above node " + std::to_string(r.node));
    }
    const VertexId m = vid(r.member), p = vid(r.pusher);
    join(m, p);
    bool covered = false;
    for (const auto& [x, bag] : cert.bags) covered = covered || (bag.count(m) && bag.count(p));
    if (covered) continue;
    std::map<NodeId, std::vector<NodeId>> nb = cert.child_map();
    for (const auto& [c, par] : cert.parent) nb[c].push_back(par);
    NodeId start = cert.root;
    for (NodeId x : cert.preorder()) {
      if (cert.bags.at(x).count(m)) {
        start = x;
        break;
      }
    }
    std::map<NodeId, NodeId> from{{start, start}};
    std::vector<NodeId> queue{start};
    NodeId goal = start;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      if (cert.bags.at(queue[qi]).count(p)) {
        goal = queue[qi];
        break;
      }
      for (NodeId y : nb[queue[qi]])
        if (from.emplace(y, queue[qi]).second) queue.push_back(y);
    }
    for (NodeId x = goal; x != start;) {
      x = from.at(x);
      cert.bags[x].insert(p);
    }
    budget.step("pusher: " + reduced.family_h[r.pusher].label + " threaded to " +
                reduced.family_h[r.member].label);
  }

  // Contained members hang off their successor once the successor has a node.
  std::map<std::size_t, std::size_t> waiting = plan.successor;
  while (!waiting.empty()) {
    bool progress = false;
    for (auto it = waiting.begin(); it != waiting.end();) {
      if (waiting.count(it->second)) {
        ++it;
        continue;
      }
      attach(static_cast<VertexId>(it->first), static_cast<VertexId>(it->second), "contained");
      it = waiting.erase(it);
      progress = true;
    }
    if (!progress) budget.fail("containment successors form a cycle");
  }
  res.decomposition = std::move(cert);
  res.trace = std::move(trace);
  return res;
}

}  // namespace supports
