#pragma once

// Families of vertex subsets on a cycle: runs, abab/axax patterns, non-blocking chords,
// and the recursive chord completion that connects every member.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "supports/graph_system.hpp"
#include "supports/rotation_graph.hpp"

namespace supports {

struct CycleFamily {
  std::vector<VertexId> order;  // clockwise, distinct
  std::vector<Subgraph> family;
};

struct Chord {
  VertexId x = 0;
  VertexId y = 0;

  Chord normalized() const { return x < y ? *this : Chord{y, x}; }
  friend bool operator==(const Chord& a, const Chord& b) {
    Chord na = a.normalized(), nb = b.normalized();
    return na.x == nb.x && na.y == nb.y;
  }
  friend bool operator<(const Chord& a, const Chord& b) {
    Chord na = a.normalized(), nb = b.normalized();
    return std::pair(na.x, na.y) < std::pair(nb.x, nb.y);
  }
};

namespace detail {

inline std::map<VertexId, std::size_t> positions(const std::vector<VertexId>& order) {
  std::map<VertexId, std::size_t> pos;
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  return pos;
}

}  // namespace detail

// Maximal clockwise arcs of consecutive members of k. The list starts with the run
// containing the earliest cycle position that begins a run.
inline std::vector<std::vector<VertexId>> runs(const CycleFamily& cf, const VertexSet& k) {
  const std::size_t n = cf.order.size();
  std::vector<std::vector<VertexId>> out;
  if (n == 0) return out;
  std::vector<bool> in(n);
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    in[i] = k.count(cf.order[i]) != 0;
    count += in[i];
  }
  if (count == 0) return out;
  if (count == n) return {cf.order};
  for (std::size_t i = 0; i < n; ++i) {
    if (!in[i] || in[(i + n - 1) % n]) continue;  // i starts a run
    std::vector<VertexId> run;
    for (std::size_t j = i; in[j % n]; ++j) run.push_back(cf.order[j % n]);
    out.push_back(std::move(run));
  }
  return out;
}

inline std::size_t run_count(const CycleFamily& cf, const VertexSet& k) { return runs(cf, k).size(); }

// cost(C, K) = sum over members of (runs - 1).
inline std::size_t chord_cost(const CycleFamily& cf) {
  std::size_t c = 0;
  for (const Subgraph& s : cf.family) {
    std::size_t r = run_count(cf, s.vertices);
    if (r > 1) c += r - 1;
  }
  return c;
}

struct PatternWitness {
  std::size_t first = 0;
  std::size_t second = 0;
  std::array<VertexId, 4> vertices{};
};

struct PatternResult {
  bool holds = true;
  std::optional<PatternWitness> witness;
  explicit operator bool() const { return holds; }
};

namespace detail {

// cls: 1 for "a" positions, 2 for "b"/"x" positions, 0 otherwise.
inline std::optional<std::array<VertexId, 4>> cyclic_pattern(const std::vector<VertexId>& order,
                                                             const std::vector<int>& cls) {
  if (auto alt = alternation(cls)) {
    std::array<VertexId, 4> out{};
    for (std::size_t k = 0; k < 4; ++k) out[k] = order[(*alt)[k]];
    return out;
  }
  return std::nullopt;
}

}  // namespace detail

// Fails when some pair shows a in K\K', b in K'\K, a, b in cyclic order.
inline PatternResult is_abab_free(const CycleFamily& cf) {
  for (std::size_t i = 0; i < cf.family.size(); ++i) {
    for (std::size_t j = i + 1; j < cf.family.size(); ++j) {
      const VertexSet& a = cf.family[i].vertices;
      const VertexSet& b = cf.family[j].vertices;
      std::vector<int> cls;
      for (VertexId v : cf.order) {
        bool ia = a.count(v) != 0, ib = b.count(v) != 0;
        cls.push_back(ia && !ib ? 1 : (ib && !ia ? 2 : 0));
      }
      if (auto w = detail::cyclic_pattern(cf.order, cls)) return {false, PatternWitness{i, j, *w}};
    }
  }
  return {};
}

// Fails when some ordered pair (H, H') shows a in H\H', x in H', a, x in cyclic order.
inline PatternResult is_axax_free(const CycleFamily& cf) {
  for (std::size_t i = 0; i < cf.family.size(); ++i) {
    for (std::size_t j = 0; j < cf.family.size(); ++j) {
      if (i == j) continue;
      const VertexSet& a = cf.family[i].vertices;
      const VertexSet& x = cf.family[j].vertices;
      std::vector<int> cls;
      for (VertexId v : cf.order) {
        bool ia = a.count(v) != 0, ix = x.count(v) != 0;
        cls.push_back(ix ? 2 : (ia ? 1 : 0));
      }
      if (auto w = detail::cyclic_pattern(cf.order, cls)) return {false, PatternWitness{i, j, *w}};
    }
  }
  return {};
}

// Vertices strictly inside the clockwise arc from x to y.
inline std::vector<VertexId> open_arc(const CycleFamily& cf, VertexId x, VertexId y) {
  auto pos = detail::positions(cf.order);
  const std::size_t n = cf.order.size();
  std::vector<VertexId> out;
  for (std::size_t i = (pos.at(x) + 1) % n; i != pos.at(y); i = (i + 1) % n) {
    out.push_back(cf.order[i]);
  }
  return out;
}

// Inclusive clockwise arc from x to y.
inline std::vector<VertexId> closed_arc(const CycleFamily& cf, VertexId x, VertexId y) {
  std::vector<VertexId> out{x};
  auto mid = open_arc(cf, x, y);
  out.insert(out.end(), mid.begin(), mid.end());
  if (y != x) out.push_back(y);
  return out;
}

// A chord blocks k when neither endpoint lies in k and both open arcs meet k.
inline bool blocks(const CycleFamily& cf, const Chord& d, const VertexSet& k) {
  if (k.count(d.x) || k.count(d.y)) return false;
  auto meets = [&](const std::vector<VertexId>& arc) {
    return std::any_of(arc.begin(), arc.end(), [&](VertexId v) { return k.count(v) != 0; });
  };
  return meets(open_arc(cf, d.x, d.y)) && meets(open_arc(cf, d.y, d.x));
}

// Chords interleave when their four endpoints are distinct and alternate around the cycle.
inline bool chords_cross(const std::vector<VertexId>& order, const Chord& c1, const Chord& c2) {
  auto pos = detail::positions(order);
  std::size_t a = pos.at(c1.x), b = pos.at(c1.y), c = pos.at(c2.x), d = pos.at(c2.y);
  if (a == c || a == d || b == c || b == d) return false;
  if (a > b) std::swap(a, b);
  bool c_in = a < c && c < b;
  bool d_in = a < d && d < b;
  return c_in != d_in;
}

struct ChordFinding {
  Chord chord;
  std::size_t member = 0;        // index of the multi-run member whose runs the chord joins
  std::size_t steps = 0;         // walk length
  bool invariants_held = true;   // blocked members stayed confined as the walk advanced
};

// Walks chords a_l b_j between the first run A of a minimal multi-run member K0 and its
// remaining runs B, advancing on whichever side first reaches a vertex of a blocked member.
inline ChordFinding find_nonblocking_chord(const CycleFamily& cf) {
  if (auto ab = is_abab_free(cf); !ab) {
    const auto& w = *ab.witness;
    throw SupportError(ErrorKind::precondition,
                       "family is not abab-free: " + cf.family[w.first].label + "/" +
                           cf.family[w.second].label + " alternate at " + std::to_string(w.vertices[0]) +
                           "," + std::to_string(w.vertices[1]) + "," + std::to_string(w.vertices[2]) +
                           "," + std::to_string(w.vertices[3]));
  }
  std::vector<std::size_t> multi;
  for (std::size_t i = 0; i < cf.family.size(); ++i) {
    if (run_count(cf, cf.family[i].vertices) >= 2) multi.push_back(i);
  }
  if (multi.empty()) {
    throw SupportError(ErrorKind::precondition, "every member is a single run; no chord is needed");
  }
  std::optional<std::size_t> k0;
  for (std::size_t i : multi) {
    bool minimal = true;
    for (std::size_t j : multi) {
      const VertexSet& a = cf.family[j].vertices;
      const VertexSet& b = cf.family[i].vertices;
      if (j != i && a.size() < b.size() && is_subset(a, b)) minimal = false;
    }
    if (minimal && (!k0 || label_less(cf.family[i].label, cf.family[*k0].label))) k0 = i;
  }
  const VertexSet& K0 = cf.family[*k0].vertices;
  auto rs = runs(cf, K0);
  const std::vector<VertexId>& A = rs.front();
  auto pos = detail::positions(cf.order);
  const std::size_t n = cf.order.size();
  VertexSet in_a(A.begin(), A.end());
  std::vector<VertexId> B;
  for (std::size_t t = 1; t < n; ++t) {
    VertexId v = cf.order[(pos.at(A.front()) + n - t) % n];
    if (K0.count(v) && !in_a.count(v)) B.push_back(v);
  }

  ChordFinding out;
  out.member = *k0;
  std::size_t l = 0, j = 0;
  for (;;) {
    Chord d{A[l], B[j]};
    std::vector<std::size_t> blocked;
    for (std::size_t i = 0; i < cf.family.size(); ++i) {
      if (blocks(cf, d, cf.family[i].vertices)) blocked.push_back(i);
    }
    if (blocked.empty()) {
      out.chord = d;
      return out;
    }
    for (std::size_t i : blocked) {
      const VertexSet& k = cf.family[i].vertices;
      for (VertexId v : open_arc(cf, A[l], B[j])) {
        if (k.count(v) && !K0.count(v)) out.invariants_held = false;
      }
      auto gap = open_arc(cf, B[j], A[l]);
      bool outside = std::any_of(gap.begin(), gap.end(),
                                 [&](VertexId v) { return k.count(v) && !K0.count(v); });
      if (!outside) out.invariants_held = false;
    }
    auto in_blocked = [&](VertexId v) {
      return std::any_of(blocked.begin(), blocked.end(),
                         [&](std::size_t i) { return cf.family[i].vertices.count(v) != 0; });
    };
    bool moved = false;
    for (std::size_t t = 1; !moved; ++t) {
      bool b_ok = j + t < B.size();
      bool a_ok = l + t < A.size();
      if (!b_ok && !a_ok) break;
      if (b_ok && in_blocked(B[j + t])) {
        j += t;
        moved = true;
      } else if (a_ok && in_blocked(A[l + t])) {
        l += t;
        moved = true;
      }
    }
    if (!moved) {
      throw SupportError(ErrorKind::internal, "chord walk ran out of candidates for member " +
                                                  cf.family[*k0].label);
    }
    ++out.steps;
  }
}

namespace detail {

inline void connect_rec(const CycleFamily& cf, std::vector<Chord>& out, std::size_t depth_left) {
  if (cf.order.size() <= 3) return;
  bool need = false;
  for (const Subgraph& s : cf.family) need = need || run_count(cf, s.vertices) >= 2;
  if (!need) return;
  if (depth_left == 0) {
    throw SupportError(ErrorKind::internal, "chord recursion exceeded its cost bound");
  }
  ChordFinding f = find_nonblocking_chord(cf);
  out.push_back(f.chord);
  const std::size_t before = chord_cost(cf);
  auto restrict_to = [&](const std::vector<VertexId>& arc) {
    CycleFamily sub;
    sub.order = arc;
    VertexSet keep(arc.begin(), arc.end());
    for (const Subgraph& s : cf.family) {
      VertexSet part = set_intersection(s.vertices, keep);
      if (!part.empty()) sub.family.push_back(Subgraph{s.label, std::move(part)});
    }
    return sub;
  };
  CycleFamily left = restrict_to(closed_arc(cf, f.chord.y, f.chord.x));
  CycleFamily right = restrict_to(closed_arc(cf, f.chord.x, f.chord.y));
  if (chord_cost(left) >= before || chord_cost(right) >= before) {
    throw SupportError(ErrorKind::internal, "chord split did not decrease cost");
  }
  connect_rec(left, out, depth_left - 1);
  connect_rec(right, out, depth_left - 1);
}

}  // namespace detail

// Non-crossing chords D such that every member induces a connected subgraph of C ∪ D.
inline std::vector<Chord> connect_all(const CycleFamily& cf) {
  if (auto ab = is_abab_free(cf); !ab) {
    const auto& w = *ab.witness;
    throw SupportError(ErrorKind::precondition,
                       "family is not abab-free: " + cf.family[w.first].label + "/" +
                           cf.family[w.second].label);
  }
  std::vector<Chord> out;
  detail::connect_rec(cf, out, chord_cost(cf) + 1);
  return out;
}

// Plain-graph view of C ∪ D used by connectivity checks.
inline std::map<VertexId, VertexSet> cycle_with_chords(const std::vector<VertexId>& order,
                                                       const std::vector<Chord>& chords) {
  std::map<VertexId, VertexSet> adj;
  const std::size_t n = order.size();
  for (VertexId v : order) adj[v];
  for (std::size_t i = 0; n >= 2 && i < n; ++i) {
    VertexId a = order[i], b = order[(i + 1) % n];
    if (a == b) continue;
    adj[a].insert(b);
    adj[b].insert(a);
  }
  for (const Chord& c : chords) {
    adj[c.x].insert(c.y);
    adj[c.y].insert(c.x);
  }
  return adj;
}

// Draws `order` as a convex polygon (clockwise) with the given extra edges as straight chords.
// At each vertex the darts are sorted by clockwise offset of the far endpoint; parallel edges
// nest consistently, so non-crossing chords give a planar rotation with every vertex on the
// outer face.
inline RotationGraph circle_embedding(const std::vector<VertexId>& order,
                                      const std::vector<std::pair<VertexId, VertexId>>& extra,
                                      bool include_cycle = true) {
  RotationGraph g;
  for (VertexId v : order) g.add_vertex(v);
  const std::size_t n = order.size();
  if (include_cycle && n == 2) {
    g.add_edge(order[0], order[1]);
  } else if (include_cycle && n >= 3) {
    for (std::size_t i = 0; i < n; ++i) g.add_edge(order[i], order[(i + 1) % n]);
  }
  for (const auto& [a, b] : extra) g.add_edge(a, b);
  auto pos = detail::positions(order);
  for (VertexId v : order) {
    std::vector<DartId> r = g.rotation(v);
    std::size_t pv = pos.at(v);
    std::stable_sort(r.begin(), r.end(), [&](DartId x, DartId y) {
      VertexId hx = g.head(x), hy = g.head(y);
      std::size_t ox = (pos.at(hx) + n - pv) % n, oy = (pos.at(hy) + n - pv) % n;
      if (ox != oy) return ox < oy;
      bool ascending = pv < pos.at(hx);
      return ascending ? dart_edge(x) < dart_edge(y) : dart_edge(x) > dart_edge(y);
    });
    g.set_rotation(v, std::move(r));
  }
  g.canonicalize();
  return g;
}

}  // namespace supports
