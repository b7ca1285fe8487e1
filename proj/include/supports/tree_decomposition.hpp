#pragma once

// Rooted tree decompositions: axiom checks, binarization, an exact small-graph oracle,
// and chordal completion.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "supports/graph_system.hpp"
#include "supports/rotation_graph.hpp"

namespace supports {

using NodeId = int;
using Adjacency = std::map<VertexId, VertexSet>;

struct TreeDecomposition {
  std::map<NodeId, VertexSet> bags;
  std::map<NodeId, NodeId> parent;  // absent for the root
  NodeId root = 0;

  int width() const {
    std::size_t w = 0;
    for (const auto& [n, b] : bags) w = std::max(w, b.size());
    return static_cast<int>(w) - 1;
  }

  std::vector<NodeId> children(NodeId n) const {
    std::vector<NodeId> out;
    for (const auto& [c, p] : parent) {
      if (p == n) out.push_back(c);
    }
    return out;
  }

  std::map<NodeId, std::vector<NodeId>> child_map() const {
    std::map<NodeId, std::vector<NodeId>> out;
    for (const auto& [n, b] : bags) out[n];
    for (const auto& [c, p] : parent) out[p].push_back(c);
    return out;
  }

  // Root first; children in id order.
  std::vector<NodeId> preorder() const {
    auto ch = child_map();
    std::vector<NodeId> out;
    std::vector<NodeId> stack{root};
    while (!stack.empty()) {
      NodeId n = stack.back();
      stack.pop_back();
      out.push_back(n);
      const auto& c = ch[n];
      for (auto it = c.rbegin(); it != c.rend(); ++it) stack.push_back(*it);
    }
    return out;
  }

  std::vector<NodeId> postorder() const {
    auto ch = child_map();
    std::vector<NodeId> out;
    std::vector<std::pair<NodeId, bool>> stack{{root, false}};
    while (!stack.empty()) {
      auto [n, done] = stack.back();
      stack.pop_back();
      if (done) {
        out.push_back(n);
        continue;
      }
      stack.push_back({n, true});
      const auto& c = ch[n];
      for (auto it = c.rbegin(); it != c.rend(); ++it) stack.push_back({*it, false});
    }
    return out;
  }

  // A_{uv} = B_u ∩ B_parent(u); empty for the root.
  VertexSet adhesion(NodeId u) const {
    auto it = parent.find(u);
    if (it == parent.end()) return {};
    return set_intersection(bags.at(u), bags.at(it->second));
  }

  // Vertices in bags of the subtree rooted at u.
  VertexSet below(NodeId u) const {
    auto ch = child_map();
    VertexSet out;
    std::vector<NodeId> stack{u};
    while (!stack.empty()) {
      NodeId n = stack.back();
      stack.pop_back();
      out.insert(bags.at(n).begin(), bags.at(n).end());
      for (NodeId c : ch[n]) stack.push_back(c);
    }
    return out;
  }

  NodeId next_node_id() const { return bags.empty() ? 0 : bags.rbegin()->first + 1; }

  friend bool operator==(const TreeDecomposition& x, const TreeDecomposition& y) {
    return x.root == y.root && x.bags == y.bags && x.parent == y.parent;
  }
};

// Throws naming the violated axiom; vertices listed in `adj` must all be covered.
inline void validate_decomposition(const TreeDecomposition& td, const Adjacency& adj) {
  auto fail = [](const std::string& m) { throw SupportError(ErrorKind::structural, m); };
  if (!td.bags.count(td.root)) fail("tree decomposition root has no bag");
  if (td.parent.count(td.root)) fail("tree decomposition root has a parent");
  for (const auto& [c, p] : td.parent) {
    if (!td.bags.count(c) || !td.bags.count(p)) fail("tree edge references a missing node");
  }
  if (td.preorder().size() != td.bags.size()) fail("tree decomposition is not a single rooted tree");
  for (const auto& [v, n] : adj) {
    bool covered = false;
    for (const auto& [id, b] : td.bags) covered = covered || b.count(v);
    if (!covered) fail("vertex " + std::to_string(v) + " lies in no bag");
    for (VertexId w : n) {
      bool inside = false;
      for (const auto& [id, b] : td.bags) inside = inside || (b.count(v) && b.count(w));
      if (!inside) {
        fail("edge {" + std::to_string(v) + "," + std::to_string(w) + "} lies in no bag");
      }
    }
  }
  // Connected subtrees: per vertex, exactly one node of its bag set has a parent outside it.
  std::map<VertexId, int> tops;
  for (const auto& [n, b] : td.bags) {
    auto it = td.parent.find(n);
    for (VertexId v : b) {
      if (!adj.count(v)) fail("bag contains unknown vertex " + std::to_string(v));
      if (it == td.parent.end() || !td.bags.at(it->second).count(v)) ++tops[v];
    }
  }
  for (const auto& [v, c] : tops) {
    if (c != 1) fail("bags containing vertex " + std::to_string(v) + " are not connected in the tree");
  }
}

inline void validate_decomposition(const TreeDecomposition& td, const RotationGraph& g) {
  validate_decomposition(td, adjacency(g));
}

// Validates, then splits nodes with more than two children by chaining copies of their bag.
inline TreeDecomposition validate_and_normalize(const TreeDecomposition& td, const Adjacency& adj) {
  validate_decomposition(td, adj);
  TreeDecomposition out = td;
  NodeId fresh = out.next_node_id();
  for (NodeId n : td.preorder()) {
    std::vector<NodeId> ch = out.children(n);
    NodeId host = n;
    while (ch.size() > 2) {
      NodeId copy = fresh++;
      out.bags[copy] = td.bags.at(n);
      out.parent[copy] = host;
      // host keeps ch[0]; the rest move under the copy
      for (std::size_t i = 1; i < ch.size(); ++i) out.parent[ch[i]] = copy;
      host = copy;
      ch.erase(ch.begin());
    }
  }
  return out;
}

inline TreeDecomposition validate_and_normalize(const TreeDecomposition& td, const RotationGraph& g) {
  return validate_and_normalize(td, adjacency(g));
}

// Decomposition from an elimination ordering: bag(v) = {v} ∪ later fill-neighbors of v.
inline TreeDecomposition decomposition_from_ordering(const Adjacency& adj,
                                                     const std::vector<VertexId>& order) {
  TreeDecomposition td;
  if (order.empty()) {
    td.bags[0] = {};
    return td;
  }
  Adjacency fill = adj;
  std::map<VertexId, std::size_t> rank;
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  std::vector<NodeId> roots;
  for (std::size_t i = 0; i < order.size(); ++i) {
    VertexId v = order[i];
    VertexSet later;
    for (VertexId w : fill[v]) {
      if (rank.at(w) > i) later.insert(w);
    }
    for (VertexId a : later)
      for (VertexId b : later)
        if (a != b) fill[a].insert(b);
    VertexSet bag = later;
    bag.insert(v);
    td.bags[static_cast<NodeId>(i)] = bag;
    if (later.empty()) {
      roots.push_back(static_cast<NodeId>(i));
    } else {
      VertexId first = *std::min_element(later.begin(), later.end(), [&](VertexId a, VertexId b) {
        return rank.at(a) < rank.at(b);
      });
      td.parent[static_cast<NodeId>(i)] = static_cast<NodeId>(rank.at(first));
    }
  }
  td.root = roots.back();
  for (NodeId r : roots) {
    if (r != td.root) td.parent[r] = td.root;
  }
  return td;
}

struct ExactTreewidth {
  int width = -1;
  TreeDecomposition decomposition;
};

// Exact treewidth by deciding width k = 0, 1, ... over elimination prefixes S: v may follow S
// when at most k vertices outside S are reachable from v through S. Prefixes already refuted are
// memoized, and a vertex whose reachable set is a clique is eliminated without branching.
inline ExactTreewidth exact_treewidth_small(const Adjacency& adj, std::size_t max_vertices = 14) {
  const std::size_t n = adj.size();
  if (n > max_vertices || n > 64) {
    throw SupportError(ErrorKind::precondition, "exact treewidth limited to " +
                                                    std::to_string(std::min<std::size_t>(max_vertices, 64)) +
                                                    " vertices, got " + std::to_string(n));
  }
  using Mask = std::uint64_t;
  std::vector<VertexId> ids;
  for (const auto& [v, nb] : adj) ids.push_back(v);
  std::map<VertexId, std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i) idx[ids[i]] = i;
  std::vector<Mask> nbr(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (VertexId w : adj.at(ids[i]))
      if (w != ids[i]) nbr[i] |= Mask{1} << idx.at(w);

  // Vertices outside S ∪ {v} reachable from v through S.
  auto reach = [&](Mask s, std::size_t v) {
    Mask seen = Mask{1} << v, frontier = seen, out = 0;
    while (frontier) {
      auto x = static_cast<std::size_t>(__builtin_ctzll(frontier));
      frontier &= frontier - 1;
      Mask nx = nbr[x] & ~seen;
      seen |= nx;
      out |= nx & ~s;
      frontier |= nx & s;
    }
    return out;
  };
  auto is_clique = [&](Mask s, Mask r) {
    for (Mask a = r; a; a &= a - 1) {
      auto x = static_cast<std::size_t>(__builtin_ctzll(a));
      if (((reach(s, x) | Mask{1} << x) & r) != r) return false;
    }
    return true;
  };

  std::vector<VertexId> order;
  for (int k = 0; n > 0; ++k) {
    std::unordered_set<Mask> refuted;
    std::vector<std::size_t> path;
    std::function<bool(Mask)> extend = [&](Mask s) {
      if (n - static_cast<std::size_t>(__builtin_popcountll(s)) <= static_cast<std::size_t>(k) + 1) return true;
      if (!refuted.insert(s).second) return false;
      for (std::size_t v = 0; v < n; ++v) {
        if (s >> v & 1) continue;
        Mask r = reach(s, v);
        if (__builtin_popcountll(r) <= k && is_clique(s, r)) {
          path.push_back(v);
          if (extend(s | Mask{1} << v)) return true;
          path.pop_back();
          return false;
        }
      }
      for (std::size_t v = 0; v < n; ++v) {
        if (s >> v & 1 || __builtin_popcountll(reach(s, v)) > k) continue;
        path.push_back(v);
        if (extend(s | Mask{1} << v)) return true;
        path.pop_back();
      }
      return false;
    };
    if (extend(0)) {
      Mask used = 0;
      for (std::size_t v : path) {
        order.push_back(ids[v]);
        used |= Mask{1} << v;
      }
      for (std::size_t v = 0; v < n; ++v)
        if (!(used >> v & 1)) order.push_back(ids[v]);
      break;
    }
  }
  ExactTreewidth out;
  out.decomposition = decomposition_from_ordering(adj, order);
  out.width = n == 0 ? -1 : out.decomposition.width();
  return out;
}

inline ExactTreewidth exact_treewidth_small(const RotationGraph& g, std::size_t max_vertices = 14) {
  return exact_treewidth_small(adjacency(g), max_vertices);
}

// Adds every missing edge between two vertices sharing a bag. New edges are appended to
// rotations, so the result carries no embedding.
inline RotationGraph chordal_complete(const RotationGraph& g, const TreeDecomposition& td) {
  RotationGraph out = g;
  auto adj = adjacency(g);
  for (const auto& [n, bag] : td.bags) {
    for (auto a = bag.begin(); a != bag.end(); ++a) {
      for (auto b = std::next(a); b != bag.end(); ++b) {
        if (!adj[*a].count(*b)) {
          out.add_edge(*a, *b);
          adj[*a].insert(*b);
          adj[*b].insert(*a);
        }
      }
    }
  }
  return out;
}

}  // namespace supports
