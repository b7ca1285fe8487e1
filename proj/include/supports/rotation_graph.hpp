#pragma once

// Embedded multigraphs stored as rotation systems.
//
// Every edge e owns two darts: 2e leaves endpoint `a`, 2e+1 leaves endpoint `b`.
// The rotation at a vertex is the clockwise cyclic order of the darts leaving it.
// Faces are the orbits of next(d) = successor of twin(d) in the rotation at its origin.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace supports {

using VertexId = int;
using EdgeId = int;
using DartId = int;
using VertexSet = std::set<VertexId>;

enum class ErrorKind {
  structural,
  precondition,
  internal,
  cap_exceeded,
  not_cross_free,
  piercing,
  parse,
};

class SupportError : public std::runtime_error {
 public:
  SupportError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  SupportError(ErrorKind kind, const std::string& what, std::vector<std::string> trace)
      : std::runtime_error(what), kind_(kind), trace_(std::move(trace)) {}
  ErrorKind kind() const { return kind_; }
  // Construction steps taken before the failure (empty unless a pipeline attached them).
  const std::vector<std::string>& trace() const { return trace_; }

 private:
  ErrorKind kind_;
  std::vector<std::string> trace_;
};

inline DartId twin(DartId d) { return d ^ 1; }
inline EdgeId dart_edge(DartId d) { return d >> 1; }
inline DartId make_dart(EdgeId e, int side) { return 2 * e + side; }

struct Edge {
  VertexId a = 0;
  VertexId b = 0;
  bool is_loop() const { return a == b; }
  VertexId other(VertexId v) const { return v == a ? b : a; }
};

struct Dart {
  DartId id = 0;
  VertexId origin = 0;
  DartId twin = 0;
};

class RotationGraph {
 public:
  bool has_vertex(VertexId v) const { return rot_.count(v) != 0; }
  bool has_edge(EdgeId e) const { return edges_.count(e) != 0; }

  void add_vertex(VertexId v) {
    if (has_vertex(v)) {
      throw SupportError(ErrorKind::structural, "duplicate vertex " + std::to_string(v));
    }
    rot_[v];
    next_vertex_ = std::max(next_vertex_, v + 1);
  }

  VertexId add_vertex() {
    VertexId v = next_vertex_;
    add_vertex(v);
    return v;
  }

  // Adds an edge whose darts are appended to the end of both rotations.
  EdgeId add_edge(VertexId a, VertexId b) {
    EdgeId e = next_edge_;
    add_edge_with_id(e, a, b);
    return e;
  }

  void add_edge_with_id(EdgeId e, VertexId a, VertexId b, bool append_darts = true) {
    if (e < 0 || has_edge(e)) {
      throw SupportError(ErrorKind::structural, "duplicate or negative edge id " + std::to_string(e));
    }
    if (!has_vertex(a) || !has_vertex(b)) {
      throw SupportError(ErrorKind::structural,
                         "edge " + std::to_string(e) + " references a missing vertex");
    }
    edges_[e] = Edge{a, b};
    next_edge_ = std::max(next_edge_, e + 1);
    if (append_darts) {
      rot_[a].push_back(make_dart(e, 0));
      rot_[b].push_back(make_dart(e, 1));
    }
  }

  void set_rotation(VertexId v, std::vector<DartId> darts) {
    if (!has_vertex(v)) {
      throw SupportError(ErrorKind::structural, "rotation for missing vertex " + std::to_string(v));
    }
    rot_[v] = std::move(darts);
  }

  const std::vector<DartId>& rotation(VertexId v) const {
    auto it = rot_.find(v);
    if (it == rot_.end()) {
      throw SupportError(ErrorKind::structural, "unknown vertex " + std::to_string(v));
    }
    return it->second;
  }

  const std::map<VertexId, std::vector<DartId>>& rotations() const { return rot_; }
  const std::map<EdgeId, Edge>& edges() const { return edges_; }

  const Edge& edge(EdgeId e) const {
    auto it = edges_.find(e);
    if (it == edges_.end()) {
      throw SupportError(ErrorKind::structural, "unknown edge " + std::to_string(e));
    }
    return it->second;
  }

  std::vector<VertexId> vertices() const {
    std::vector<VertexId> out;
    out.reserve(rot_.size());
    for (const auto& [v, r] : rot_) out.push_back(v);
    return out;
  }

  std::size_t vertex_count() const { return rot_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t degree(VertexId v) const { return rotation(v).size(); }

  VertexId origin(DartId d) const {
    const Edge& e = edge(dart_edge(d));
    return (d & 1) ? e.b : e.a;
  }
  VertexId head(DartId d) const { return origin(twin(d)); }

  Dart dart(DartId d) const { return Dart{d, origin(d), twin(d)}; }

  // Neighbors in rotation order, with multiplicity; a loop contributes its vertex twice.
  std::vector<VertexId> neighbors(VertexId v) const {
    std::vector<VertexId> out;
    for (DartId d : rotation(v)) out.push_back(head(d));
    return out;
  }

  VertexId next_vertex_id() const { return next_vertex_; }
  EdgeId next_edge_id() const { return next_edge_; }

  // Keeps fresh ids monotone across derived copies so removed ids are never reused.
  void reserve_ids(VertexId next_vertex, EdgeId next_edge) {
    next_vertex_ = std::max(next_vertex_, next_vertex);
    next_edge_ = std::max(next_edge_, next_edge);
  }

  void remove_edge(EdgeId e) {
    const Edge ed = edge(e);
    erase_dart(ed.a, make_dart(e, 0));
    erase_dart(ed.b, make_dart(e, 1));
    edges_.erase(e);
  }

  void remove_vertex(VertexId v) {
    std::vector<EdgeId> incident;
    for (DartId d : rotation(v)) incident.push_back(dart_edge(d));
    std::sort(incident.begin(), incident.end());
    incident.erase(std::unique(incident.begin(), incident.end()), incident.end());
    for (EdgeId e : incident) remove_edge(e);
    rot_.erase(v);
  }

  // Replaces `old_dart` by `new_dart` at the same rotation position of v.
  void replace_dart(VertexId v, DartId old_dart, DartId new_dart) {
    auto& r = rot_.at(v);
    auto it = std::find(r.begin(), r.end(), old_dart);
    if (it == r.end()) {
      throw SupportError(ErrorKind::structural,
                         "dart " + std::to_string(old_dart) + " not at vertex " + std::to_string(v));
    }
    *it = new_dart;
  }

  // Inserts `darts` (in order) immediately after `anchor` in the rotation of v.
  void insert_after(VertexId v, DartId anchor, const std::vector<DartId>& darts) {
    auto& r = rot_.at(v);
    auto it = std::find(r.begin(), r.end(), anchor);
    if (it == r.end()) {
      throw SupportError(ErrorKind::structural,
                         "anchor dart " + std::to_string(anchor) + " not at vertex " + std::to_string(v));
    }
    r.insert(it + 1, darts.begin(), darts.end());
  }

  // Rotates every cyclic sequence to start at its minimum dart id.
  void canonicalize() {
    for (auto& [v, r] : rot_) {
      if (r.empty()) continue;
      auto m = std::min_element(r.begin(), r.end());
      std::rotate(r.begin(), m, r.end());
    }
  }

  friend bool operator==(const RotationGraph& x, const RotationGraph& y) {
    if (x.rot_.size() != y.rot_.size() || x.edges_.size() != y.edges_.size()) return false;
    for (const auto& [e, ed] : x.edges_) {
      auto it = y.edges_.find(e);
      if (it == y.edges_.end() || it->second.a != ed.a || it->second.b != ed.b) return false;
    }
    RotationGraph cx = x, cy = y;
    cx.canonicalize();
    cy.canonicalize();
    return cx.rot_ == cy.rot_;
  }

 private:
  void erase_dart(VertexId v, DartId d) {
    auto& r = rot_.at(v);
    auto it = std::find(r.begin(), r.end(), d);
    if (it != r.end()) r.erase(it);
  }

  std::map<VertexId, std::vector<DartId>> rot_;
  std::map<EdgeId, Edge> edges_;
  VertexId next_vertex_ = 0;
  EdgeId next_edge_ = 0;
};

struct FacePartition {
  // Dart cycles; an isolated vertex contributes one face with no darts.
  std::vector<std::vector<DartId>> faces;
  std::size_t count = 0;
};

// Checks the twin/rotation invariants; throws a structural error naming the offending dart.
inline void audit(const RotationGraph& g) {
  std::map<DartId, VertexId> seen;
  for (const auto& [v, r] : g.rotations()) {
    for (DartId d : r) {
      if (!g.has_edge(dart_edge(d))) {
        throw SupportError(ErrorKind::structural,
                           "dart " + std::to_string(d) + " at vertex " + std::to_string(v) +
                               " belongs to no edge");
      }
      if (g.origin(d) != v) {
        throw SupportError(ErrorKind::structural,
                           "dart " + std::to_string(d) + " listed at vertex " + std::to_string(v) +
                               " but originates at " + std::to_string(g.origin(d)));
      }
      if (!seen.emplace(d, v).second) {
        throw SupportError(ErrorKind::structural, "dart " + std::to_string(d) + " duplicated");
      }
    }
  }
  for (const auto& [e, ed] : g.edges()) {
    for (int side = 0; side < 2; ++side) {
      if (!seen.count(make_dart(e, side))) {
        throw SupportError(ErrorKind::structural,
                           "dart " + std::to_string(make_dart(e, side)) + " missing from rotation");
      }
    }
  }
}

namespace detail {

struct DartIndex {
  std::map<DartId, std::pair<VertexId, std::size_t>> pos;

  explicit DartIndex(const RotationGraph& g) {
    for (const auto& [v, r] : g.rotations()) {
      for (std::size_t i = 0; i < r.size(); ++i) pos[r[i]] = {v, i};
    }
  }

  DartId successor(const RotationGraph& g, DartId d) const {
    auto [v, i] = pos.at(d);
    const auto& r = g.rotation(v);
    return r[(i + 1) % r.size()];
  }
};

}  // namespace detail

inline DartId face_next(const RotationGraph& g, DartId d) {
  detail::DartIndex idx(g);
  return idx.successor(g, twin(d));
}

inline FacePartition faces(const RotationGraph& g) {
  audit(g);
  detail::DartIndex idx(g);
  FacePartition out;
  std::set<DartId> used;
  std::vector<DartId> all;
  for (const auto& [d, p] : idx.pos) all.push_back(d);
  for (DartId start : all) {
    if (used.count(start)) continue;
    std::vector<DartId> cycle;
    DartId d = start;
    do {
      used.insert(d);
      cycle.push_back(d);
      d = idx.successor(g, twin(d));
    } while (d != start);
    out.faces.push_back(std::move(cycle));
  }
  for (const auto& [v, r] : g.rotations()) {
    if (r.empty()) out.faces.emplace_back();
  }
  out.count = out.faces.size();
  return out;
}

// Connected components as lists of vertices, ordered by their minimum vertex.
inline std::vector<std::vector<VertexId>> components(const RotationGraph& g) {
  std::map<VertexId, VertexId> parent;
  for (VertexId v : g.vertices()) parent[v] = v;
  auto find = [&](VertexId x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& [e, ed] : g.edges()) {
    VertexId ra = find(ed.a), rb = find(ed.b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::map<VertexId, std::vector<VertexId>> groups;
  for (VertexId v : g.vertices()) groups[find(v)].push_back(v);
  std::vector<std::vector<VertexId>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

// Euler genus of the surface determined by the rotation, summed over components.
inline int euler_genus(const RotationGraph& g) {
  FacePartition fp = faces(g);
  long long c = static_cast<long long>(components(g).size());
  long long v = static_cast<long long>(g.vertex_count());
  long long e = static_cast<long long>(g.edge_count());
  long long f = static_cast<long long>(fp.count);
  long long twice = 2 * c - v + e - f;
  if (twice < 0 || twice % 2 != 0) {
    throw SupportError(ErrorKind::internal,
                       "inconsistent Euler characteristic (2c - V + E - F = " +
                           std::to_string(twice) + ")");
  }
  return static_cast<int>(twice / 2);
}

// Contracts the non-loop edge e. The merged vertex keeps the id `survivor` (default: endpoint a).
// Its rotation is the rotation of one endpoint followed by the other's, spliced at the removed
// darts. Loops formed from edges parallel to e are dropped; other multi-edges are kept.
inline RotationGraph contract_edge(const RotationGraph& g, EdgeId e,
                                   std::optional<VertexId> survivor = std::nullopt) {
  const Edge ed = g.edge(e);
  if (ed.is_loop()) {
    throw SupportError(ErrorKind::precondition, "cannot contract loop " + std::to_string(e));
  }
  VertexId keep = survivor.value_or(ed.a);
  if (keep != ed.a && keep != ed.b) {
    throw SupportError(ErrorKind::precondition,
                       "survivor " + std::to_string(keep) + " is not an endpoint of edge " +
                           std::to_string(e));
  }
  VertexId gone = ed.other(keep);
  DartId dk = keep == ed.a ? make_dart(e, 0) : make_dart(e, 1);
  DartId dg = twin(dk);

  auto after = [](const std::vector<DartId>& r, DartId d) {
    std::vector<DartId> out;
    auto it = std::find(r.begin(), r.end(), d);
    std::size_t i = static_cast<std::size_t>(it - r.begin());
    for (std::size_t k = 1; k < r.size(); ++k) out.push_back(r[(i + k) % r.size()]);
    return out;
  };

  std::vector<DartId> merged = after(g.rotation(keep), dk);
  std::vector<DartId> tail = after(g.rotation(gone), dg);
  merged.insert(merged.end(), tail.begin(), tail.end());

  std::set<EdgeId> new_loops;
  for (const auto& [f, fe] : g.edges()) {
    if (f == e) continue;
    if ((fe.a == keep && fe.b == gone) || (fe.a == gone && fe.b == keep)) new_loops.insert(f);
  }

  RotationGraph out;
  out.reserve_ids(g.next_vertex_id(), g.next_edge_id());
  for (VertexId v : g.vertices()) {
    if (v != gone) out.add_vertex(v);
  }
  for (const auto& [f, fe] : g.edges()) {
    if (f == e || new_loops.count(f)) continue;
    VertexId a = fe.a == gone ? keep : fe.a;
    VertexId b = fe.b == gone ? keep : fe.b;
    out.add_edge_with_id(f, a, b, false);
  }
  for (VertexId v : g.vertices()) {
    if (v == gone) continue;
    const std::vector<DartId>& src = v == keep ? merged : g.rotation(v);
    std::vector<DartId> r;
    for (DartId d : src) {
      if (!new_loops.count(dart_edge(d))) r.push_back(d);
    }
    out.set_rotation(v, std::move(r));
  }
  out.canonicalize();
  return out;
}

// Replaces e = {a, b} by the path a - w - b. Edge e keeps its id and its dart at a;
// the new edge (w, b) takes e's place in the rotation at b.
inline std::pair<RotationGraph, VertexId> subdivide_edge(const RotationGraph& g, EdgeId e) {
  const Edge ed = g.edge(e);
  RotationGraph out;
  out.reserve_ids(g.next_vertex_id(), g.next_edge_id());
  for (VertexId v : g.vertices()) out.add_vertex(v);
  VertexId w = out.next_vertex_id();
  out.add_vertex(w);
  for (const auto& [f, fe] : g.edges()) {
    if (f == e) {
      out.add_edge_with_id(f, fe.a, w, false);
    } else {
      out.add_edge_with_id(f, fe.a, fe.b, false);
    }
  }
  EdgeId nf = out.next_edge_id();
  out.add_edge_with_id(nf, w, ed.b, false);
  for (VertexId v : g.vertices()) out.set_rotation(v, g.rotation(v));
  out.replace_dart(ed.b, make_dart(e, 1), make_dart(nf, 1));
  out.set_rotation(w, {make_dart(e, 1), make_dart(nf, 0)});
  out.canonicalize();
  return {out, w};
}

// Adds the cycle u_0 u_1 ... u_{k-1} around v, where u_i are the degree-2 subdivision vertices
// of v's edges in v's rotation order. Cycle edge c_i joins u_i and u_{i+1}. The rotation at u_i
// becomes (to v, c_{i-1}, to v_i, c_i), which keeps each triangle v u_i u_{i+1} a face.
inline RotationGraph insert_cycle_around(const RotationGraph& g, VertexId v,
                                         const std::vector<VertexId>& subdividers) {
  const auto& rv = g.rotation(v);
  const std::size_t k = subdividers.size();
  if (rv.size() != k) {
    throw SupportError(ErrorKind::precondition,
                       "subdivider count does not match degree of vertex " + std::to_string(v));
  }
  RotationGraph out = g;
  if (k < 2) return out;

  // Align subdividers with the cyclic rotation at v.
  std::size_t shift = k;
  for (std::size_t s = 0; s < k && shift == k; ++s) {
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) ok = g.head(rv[(s + i) % k]) == subdividers[i];
    if (ok) shift = s;
  }
  if (shift == k) {
    throw SupportError(ErrorKind::precondition,
                       "subdividers do not follow the rotation at vertex " + std::to_string(v));
  }
  std::vector<DartId> to_u(k);  // dart at v toward u_i
  for (std::size_t i = 0; i < k; ++i) to_u[i] = rv[(shift + i) % k];

  std::vector<DartId> to_v(k), outward(k);
  for (std::size_t i = 0; i < k; ++i) {
    VertexId u = subdividers[i];
    const auto& ru = g.rotation(u);
    if (ru.size() != 2) {
      throw SupportError(ErrorKind::precondition,
                         "subdivider " + std::to_string(u) + " does not have degree 2");
    }
    to_v[i] = twin(to_u[i]);
    outward[i] = ru[0] == to_v[i] ? ru[1] : ru[0];
  }

  std::vector<EdgeId> cyc(k);
  for (std::size_t i = 0; i < k; ++i) {
    cyc[i] = out.next_edge_id();
    out.add_edge_with_id(cyc[i], subdividers[i], subdividers[(i + 1) % k], false);
  }
  for (std::size_t i = 0; i < k; ++i) {
    DartId prev_in = make_dart(cyc[(i + k - 1) % k], 1);  // c_{i-1} arrives at u_i via side b
    DartId next_out = make_dart(cyc[i], 0);
    out.set_rotation(subdividers[i], {to_v[i], prev_in, outward[i], next_out});
  }
  out.canonicalize();
  return out;
}

// Copy of g with vertices renamed through `rename`; rotation and edge ids are preserved.
inline RotationGraph relabel_vertices(const RotationGraph& g,
                                      const std::map<VertexId, VertexId>& rename) {
  RotationGraph out;
  for (VertexId v : g.vertices()) out.add_vertex(rename.at(v));
  for (const auto& [e, ed] : g.edges()) {
    out.add_edge_with_id(e, rename.at(ed.a), rename.at(ed.b), false);
  }
  for (VertexId v : g.vertices()) out.set_rotation(rename.at(v), g.rotation(v));
  out.canonicalize();
  return out;
}

// Plain adjacency (neighbor sets, loops ignored).
inline std::map<VertexId, VertexSet> adjacency(const RotationGraph& g) {
  std::map<VertexId, VertexSet> adj;
  for (VertexId v : g.vertices()) adj[v];
  for (const auto& [e, ed] : g.edges()) {
    if (ed.is_loop()) continue;
    adj[ed.a].insert(ed.b);
    adj[ed.b].insert(ed.a);
  }
  return adj;
}

inline bool has_edge_between(const RotationGraph& g, VertexId a, VertexId b) {
  for (DartId d : g.rotation(a)) {
    if (g.head(d) == b) return true;
  }
  return false;
}

}  // namespace supports
