#pragma once

// Deterministic instance generators: named examples, both lower-bound families, the stabbed
// coloring counterexamples, and seeded random systems for fuzzing.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "supports/cycle_chords.hpp"
#include "supports/graph_system.hpp"
#include "supports/rotation_graph.hpp"
#include "supports/tree_decomposition.hpp"
#include "supports/verify.hpp"

namespace supports {

// PCG32 (XSH-RR output on a 64-bit LCG). state' = state * 6364136223846793005 + inc, with inc
// odd; output rotates ((state >> 18) ^ state) >> 27 right by state >> 59. Seeding follows the
// reference pcg32_srandom_r.
class Pcg32 {
 public:
  using result_type = std::uint32_t;

  explicit Pcg32(std::uint64_t seed, std::uint64_t stream = 0xda3e39cb94b95bdbULL) {
    inc_ = (stream << 1u) | 1u;
    state_ = 0;
    (*this)();
    state_ += seed;
    (*this)();
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return 0xffffffffu; }

  result_type operator()() {
    std::uint64_t old = state_;
    state_ = old * 6364136223846793005ULL + inc_;
    auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    auto rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
  }

  // Uniform in [0, bound) by rejection of the low remainder.
  std::uint32_t below(std::uint32_t bound) {
    if (bound <= 1) return 0;
    std::uint32_t threshold = (0u - bound) % bound;
    for (;;) {
      std::uint32_t r = (*this)();
      if (r >= threshold) return r % bound;
    }
  }

  // True with probability percent / 100.
  bool chance(int percent) { return static_cast<int>(below(100)) < percent; }

 private:
  std::uint64_t state_ = 0;
  std::uint64_t inc_ = 0;
};

// A generated system with the properties its construction promises. Tests re-derive every
// expectation with the predicates.
struct Instance {
  GraphSystem system;
  std::map<std::string, bool> expected;
  std::optional<TreeDecomposition> decomposition;
  GridLabeling grid;  // lower-bound instances: grid cell -> support vertex
  int grid_size = 0;
};

namespace detail {

// Rotation at each vertex sorted counter-clockwise by the direction to each neighbor.
inline RotationGraph straight_line(const std::map<VertexId, std::pair<double, double>>& xy,
                                   const std::vector<std::pair<VertexId, VertexId>>& edges) {
  RotationGraph g;
  for (const auto& [v, p] : xy) g.add_vertex(v);
  for (const auto& [a, b] : edges) g.add_edge(a, b);
  for (const auto& [v, p] : xy) {
    std::vector<DartId> r = g.rotation(v);
    std::sort(r.begin(), r.end(), [&, p = p](DartId x, DartId y) {
      auto q1 = xy.at(g.head(x)), q2 = xy.at(g.head(y));
      return std::atan2(q1.second - p.second, q1.first - p.first) <
             std::atan2(q2.second - p.second, q2.first - p.first);
    });
    g.set_rotation(v, r);
  }
  return g;
}

inline RotationGraph plain_graph(const VertexSet& vs, const std::set<std::pair<VertexId, VertexId>>& edges) {
  RotationGraph g;
  for (VertexId v : vs) g.add_vertex(v);
  for (const auto& [a, b] : edges) g.add_edge(a, b);
  return g;
}

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

// The lexicographically first `count` n-subsets of {0, ..., 2n-1}.
inline std::vector<std::vector<int>> first_subsets(int n, int count) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) cur[static_cast<std::size_t>(i)] = i;
  while (static_cast<int>(out.size()) < count) {
    out.push_back(cur);
    int i = n - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == 2 * n - n + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

// Root bag `hub`; one leaf per other vertex holding it and its neighbors. Valid when no two
// vertices outside the hub are adjacent.
inline TreeDecomposition hub_decomposition(const RotationGraph& g, const VertexSet& hub) {
  TreeDecomposition td;
  td.root = 0;
  td.bags[0] = hub;
  auto adj = adjacency(g);
  NodeId next = 1;
  for (const auto& [v, nb] : adj) {
    if (hub.count(v)) continue;
    VertexSet bag = nb;
    bag.insert(v);
    td.bags[next] = bag;
    td.parent[next] = 0;
    ++next;
  }
  return td;
}

inline void exhausted(const std::string& what, std::size_t accepted, std::size_t wanted,
                      std::size_t attempts) {
  throw SupportError(ErrorKind::precondition,
                     what + ": rejection budget exhausted after " + std::to_string(attempts) +
                         " attempts, accepted " + std::to_string(accepted) + " of " +
                         std::to_string(wanted) + " (rate " +
                         std::to_string(attempts ? double(accepted) / double(attempts) : 0.0) + ")");
}

}  // namespace detail

// n x n grid on the torus with its n row cycles and n column cycles.
inline Instance gen_torus_grid(int n) {
  if (n < 3) throw SupportError(ErrorKind::precondition, "torus grid needs n >= 3");
  Instance out;
  GraphSystem& s = out.system;
  s.name = "torus_grid_" + std::to_string(n);
  RotationGraph& g = s.host;
  for (int v = 0; v < n * n; ++v) g.add_vertex(v);
  std::map<std::pair<int, int>, EdgeId> right, down;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) right[{i, j}] = g.add_edge(i * n + j, i * n + (j + 1) % n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) down[{i, j}] = g.add_edge(i * n + j, ((i + 1) % n) * n + j);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      g.set_rotation(i * n + j, {make_dart(right[{i, j}], 0), make_dart(down[{(i + n - 1) % n, j}], 1),
                                 make_dart(right[{i, (j + n - 1) % n}], 1), make_dart(down[{i, j}], 0)});
    }
  }
  s.embedded = true;
  for (int i = 0; i < n; ++i) {
    VertexSet row, col;
    for (int j = 0; j < n; ++j) {
      row.insert(i * n + j);
      col.insert(j * n + i);
    }
    s.family_h.push_back({"row" + std::to_string(i), row});
    s.family_h.push_back({"col" + std::to_string(i), col});
  }
  out.expected = {{"non_piercing", true}, {"cross_free", false}};
  return out;
}

// Hexagon 1..6 with inner triangle 2-4-6 and the four subgraphs forcing a K4 dual support.
inline Instance gen_asteroidal() {
  Instance out;
  GraphSystem& s = out.system;
  s.name = "asteroidal";
  s.host = circle_embedding({1, 2, 3, 4, 5, 6}, {{2, 4}, {2, 6}, {4, 6}});
  s.embedded = true;
  s.family_h = {{"A", {1, 2, 3}}, {"B", {3, 4, 5}}, {"C", {5, 6, 1}}, {"D", {2, 4, 6}}};
  out.expected = {{"cross_free", true}, {"non_piercing", false}};
  return out;
}

// kind: "triangle" (K_{1,3}, red center, H_i = {v_i, v, v_{i+1}}), "primal_piercing" (K_{1,n},
// red center, all leaf pairs with the center), "dual_piercing" (K_{1,C(n,2)}, member i holds the
// center and every leaf whose pair contains i), "two_fan" (K_{1,4}, {v,a,b} and {v,c,d}).
inline Instance gen_star_gadgets(const std::string& kind, int n = 4) {
  Instance out;
  GraphSystem& s = out.system;
  s.name = "star_" + kind;
  s.embedded = true;  // any rotation of a tree is planar
  auto star = [&](int leaves) {
    s.host.add_vertex(0);
    for (int i = 1; i <= leaves; ++i) {
      s.host.add_vertex(i);
      s.host.add_edge(0, i);
    }
  };
  if (kind == "triangle") {
    star(3);
    for (int i = 0; i < 3; ++i) {
      s.family_h.push_back({"H" + std::to_string(i), {0, 1 + i, 1 + (i + 1) % 3}});
    }
    s.coloring = {{0, Color::red}, {1, Color::blue}, {2, Color::blue}, {3, Color::blue}};
    out.expected = {{"non_piercing", true}, {"cross_free", true}};
  } else if (kind == "primal_piercing") {
    if (n < 3) throw SupportError(ErrorKind::precondition, "primal_piercing needs n >= 3");
    star(n);
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        s.family_h.push_back({"H" + std::to_string(i) + "," + std::to_string(j), {0, i, j}});
    s.coloring[0] = Color::red;
    for (int i = 1; i <= n; ++i) s.coloring[i] = Color::blue;
    out.expected = {{"non_piercing", false}};
  } else if (kind == "dual_piercing") {
    if (n < 3) throw SupportError(ErrorKind::precondition, "dual_piercing needs n >= 3");
    std::map<std::pair<int, int>, VertexId> leaf;
    int next = 1;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) leaf[{i, j}] = next++;
    star(next - 1);
    for (int i = 1; i <= n; ++i) {
      VertexSet h{0};
      for (const auto& [p, v] : leaf)
        if (p.first == i || p.second == i) h.insert(v);
      s.family_h.push_back({"H" + std::to_string(i), h});
    }
    out.expected = {{"non_piercing", false}};
  } else if (kind == "two_fan") {
    star(4);
    s.family_h = {{"H", {0, 1, 2}}, {"H'", {0, 3, 4}}};
    out.expected = {{"cross_free", true}, {"non_piercing", false}};
  } else {
    throw SupportError(ErrorKind::precondition, "unknown star gadget kind: " + kind);
  }
  return out;
}

// Blue N x N grid b_{i,j}; red sets U, D, L, R of 2n vertices each with
// n = ceil((1 + epsilon) log2 N). Horizontal neighbors share U_j and R_i, vertical neighbors
// share D_j and L_i; each pair spans one subgraph. Any primal support contains the grid.
inline Instance gen_primal_lb(int big_n, double epsilon = 0.1) {
  if (big_n < 2) throw SupportError(ErrorKind::precondition, "primal lower bound needs N >= 2");
  const int n = static_cast<int>(std::ceil((1.0 + epsilon) * std::log2(double(big_n)) - 1e-9));
  if (n < 1 || detail::binomial(2 * n, n) < static_cast<std::uint64_t>(big_n)) {
    throw SupportError(ErrorKind::precondition, "C(2n,n) < N for n = " + std::to_string(n));
  }
  const auto subs = detail::first_subsets(n, big_n);
  const int nn = big_n * big_n;
  auto b = [&](int i, int j) { return static_cast<VertexId>((i - 1) * big_n + (j - 1)); };
  auto part = [&](int base, int k) {  // k-th subset (1-based) of the red set starting at base
    VertexSet out;
    for (int x : subs[static_cast<std::size_t>(k - 1)]) out.insert(base + x);
    return out;
  };
  const int u0 = nn, d0 = nn + 2 * n, l0 = nn + 4 * n, r0 = nn + 6 * n;

  Instance out;
  GraphSystem& s = out.system;
  s.name = "primal_lb_" + std::to_string(big_n);
  VertexSet all, blue, red;
  for (int v = 0; v < nn + 8 * n; ++v) {
    all.insert(v);
    (v < nn ? blue : red).insert(v);
    s.coloring[v] = v < nn ? Color::blue : Color::red;
  }
  std::set<std::pair<VertexId, VertexId>> edges;
  auto join_all = [&](VertexId x, const VertexSet& reds) {
    for (VertexId r : reds) edges.insert({x, r});
  };
  for (int i = 1; i <= big_n; ++i) {
    for (int j = 1; j < big_n; ++j) {
      VertexSet h = set_union_of(part(u0, j), part(r0, i));
      join_all(b(i, j), h);
      join_all(b(i, j + 1), h);
      h.insert(b(i, j));
      h.insert(b(i, j + 1));
      s.family_h.push_back({"H" + std::to_string(i) + "," + std::to_string(j), h});
    }
  }
  for (int i = 1; i < big_n; ++i) {
    for (int j = 1; j <= big_n; ++j) {
      VertexSet h = set_union_of(part(d0, j), part(l0, i));
      join_all(b(i, j), h);
      join_all(b(i + 1, j), h);
      h.insert(b(i, j));
      h.insert(b(i + 1, j));
      s.family_h.push_back({"V" + std::to_string(i) + "," + std::to_string(j), h});
    }
  }
  s.host = detail::plain_graph(all, edges);
  out.decomposition = detail::hub_decomposition(s.host, blue.size() <= red.size() ? blue : red);
  for (int i = 1; i <= big_n; ++i)
    for (int j = 1; j <= big_n; ++j) out.grid[{i - 1, j - 1}] = b(i, j);
  out.grid_size = big_n;
  out.expected = {{"non_piercing", true}};
  return out;
}

// Sets A, B of 2n vertices (smallest n with C(2n,n) >= N) and connector vertices g; H_{ij}
// holds the four connectors around grid point (2i, 2j) plus A_i and B_j. Connector g_{2i,2j+1}
// lies only in H_{ij} and H_{i,j+1}, so any dual support contains the N x N grid on the H_{ij}.
inline Instance gen_dual_lb(int big_n) {
  if (big_n < 2) throw SupportError(ErrorKind::precondition, "dual lower bound needs N >= 2");
  int n = 1;
  while (detail::binomial(2 * n, n) < static_cast<std::uint64_t>(big_n)) ++n;
  const auto subs = detail::first_subsets(n, big_n);
  auto a_set = [&](int i) {
    VertexSet out;
    if (i < 1 || i > big_n) return out;
    for (int x : subs[static_cast<std::size_t>(i - 1)]) out.insert(x);
    return out;
  };
  auto b_set = [&](int j) {
    VertexSet out;
    if (j < 1 || j > big_n) return out;
    for (int x : subs[static_cast<std::size_t>(j - 1)]) out.insert(2 * n + x);
    return out;
  };
  Instance out;
  GraphSystem& s = out.system;
  s.name = "dual_lb_" + std::to_string(big_n);
  VertexSet all, hub;
  for (int v = 0; v < 4 * n; ++v) {
    all.insert(v);
    hub.insert(v);
  }
  std::map<std::pair<int, int>, VertexId> g;  // grid coordinates -> connector vertex
  std::set<std::pair<VertexId, VertexId>> edges;
  VertexId next = 4 * n;
  auto connector = [&](int x, int y, const VertexSet& nb) {
    g[{x, y}] = next;
    all.insert(next);
    for (VertexId w : nb) edges.insert({w, next});
    ++next;
  };
  for (int i = 1; i <= big_n; ++i)
    for (int j = 0; j <= big_n; ++j)
      connector(2 * i, 2 * j + 1, set_union_of(a_set(i), set_union_of(b_set(j), b_set(j + 1))));
  for (int i = 0; i <= big_n; ++i)
    for (int j = 1; j <= big_n; ++j)
      connector(2 * i + 1, 2 * j, set_union_of(a_set(i), set_union_of(a_set(i + 1), b_set(j))));
  for (int i = 1; i <= big_n; ++i) {
    for (int j = 1; j <= big_n; ++j) {
      VertexSet h = set_union_of(a_set(i), b_set(j));
      for (auto c : {std::pair{2 * i - 1, 2 * j}, std::pair{2 * i + 1, 2 * j}, std::pair{2 * i, 2 * j - 1},
                     std::pair{2 * i, 2 * j + 1}})
        h.insert(g.at(c));
      out.grid[{i - 1, j - 1}] = static_cast<VertexId>(s.family_h.size());
      s.family_h.push_back({"H" + std::to_string(i) + "," + std::to_string(j), h});
    }
  }
  s.host = detail::plain_graph(all, edges);
  VertexSet others = set_minus(all, hub);
  out.decomposition = detail::hub_decomposition(s.host, hub.size() <= others.size() ? hub : others);
  out.grid_size = big_n;
  out.expected = {{"non_piercing", true}};
  return out;
}

// Cell graphs of two stabbed arrangements needing four colors. "dual4": four disks, one central
// and three around it, where each of the six depth-2 cells lies in a distinct pair of disks.
// "primal4": six regions through a common cell o, each holding exactly two of four blue points.
inline Instance gen_stabbed_counterexamples(const std::string& kind) {
  Instance out;
  GraphSystem& s = out.system;
  s.name = "stabbed_" + kind;
  s.embedded = true;
  if (kind == "dual4") {
    constexpr double pi = 3.141592653589793;
    auto polar = [&](double deg, double r) {
      return std::pair{r * std::cos(deg * pi / 180.0), r * std::sin(deg * pi / 180.0)};
    };
    // o=0; t12,t13,t23 = 1..3 (depth 3); q1..q3 = 4..6 (outer i with the central disk);
    // p12,p13,p23 = 7..9 (two outer disks); s1..s3 = 10..12 (one outer disk).
    const double theta[3] = {90, 210, 330};
    const std::pair<int, int> pairs[3] = {{0, 1}, {0, 2}, {1, 2}};
    const double mid[3] = {150, 30, 270};
    std::map<VertexId, std::pair<double, double>> xy{{0, {0.0, 0.0}}};
    std::vector<std::pair<VertexId, VertexId>> e;
    for (int k = 0; k < 3; ++k) {
      xy[1 + k] = polar(mid[k], 0.6);
      xy[4 + k] = polar(theta[k], 1.0);
      xy[7 + k] = polar(mid[k], 1.6);
      xy[10 + k] = polar(theta[k], 2.2);
      e.push_back({0, 1 + k});
      e.push_back({4 + k, 10 + k});
    }
    for (int k = 0; k < 3; ++k) {
      auto [i, j] = pairs[k];
      e.push_back({1 + k, 4 + i});
      e.push_back({1 + k, 4 + j});
      e.push_back({1 + k, 7 + k});
      e.push_back({7 + k, 10 + i});
      e.push_back({7 + k, 10 + j});
    }
    s.host = detail::straight_line(xy, e);
    for (int i = 0; i < 3; ++i) {
      VertexSet h{0, 4 + i, 10 + i};
      for (int k = 0; k < 3; ++k) {
        if (pairs[k].first == i || pairs[k].second == i) {
          h.insert(1 + k);
          h.insert(7 + k);
        }
      }
      s.family_h.push_back({"D" + std::to_string(i + 1), h});
    }
    s.family_h.push_back({"D4", {0, 1, 2, 3, 4, 5, 6}});
  } else if (kind == "primal4") {
    // Cells of a 7x7 square grid; o=0 and the points a..d are 1..4.
    const std::vector<std::pair<int, int>> at = {
        {3, 3}, {3, 1}, {2, 4}, {1, 3}, {5, 3}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {0, 6},
        {1, 1}, {1, 2}, {1, 6}, {2, 0}, {2, 1}, {2, 2}, {2, 3}, {2, 5}, {2, 6}, {3, 0},
        {3, 2}, {3, 4}, {3, 5}, {3, 6}, {4, 0}, {4, 1}, {4, 2}, {4, 3}, {4, 4}, {4, 5},
        {4, 6}, {5, 1}, {5, 4}, {6, 1}, {6, 2}, {6, 3}, {6, 4}};
    std::map<VertexId, std::pair<double, double>> xy;
    std::map<std::pair<int, int>, VertexId> id;
    for (std::size_t v = 0; v < at.size(); ++v) {
      xy[static_cast<VertexId>(v)] = {double(at[v].first), double(at[v].second)};
      id[at[v]] = static_cast<VertexId>(v);
    }
    std::vector<std::pair<VertexId, VertexId>> e;
    for (const auto& [p, v] : id) {
      for (auto q : {std::pair{p.first + 1, p.second}, std::pair{p.first, p.second + 1}}) {
        auto it = id.find(q);
        if (it != id.end()) e.push_back({v, it->second});
      }
    }
    s.host = detail::straight_line(xy, e);
    s.family_h = {
        {"Rab", {0, 1, 2, 13, 14, 15, 16, 19, 24, 25}},
        {"Rac", {0, 1, 3, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 18, 19, 21, 23, 24, 25, 28, 29, 30}},
        {"Rad", {0, 1, 4, 20, 26, 27}},
        {"Rbc", {0, 2, 3, 16}},
        {"Rbd", {0, 2, 4, 15, 16, 17, 20, 21, 22, 25, 26, 27, 28, 31, 32, 33, 34, 35, 36}},
        {"Rcd", {0, 3, 4, 6, 7, 8, 9, 12, 18, 21, 23, 28, 29, 30, 32}},
    };
    for (VertexId v : s.host.vertices()) s.coloring[v] = v >= 1 && v <= 4 ? Color::blue : Color::red;
  } else {
    throw SupportError(ErrorKind::precondition, "unknown stabbed counterexample kind: " + kind);
  }
  out.expected = {{"non_piercing", true}, {"cross_free", true}};
  return out;
}

struct RandomPlanarParams {
  int vertices = 12;
  int members = 5;
  int max_member_size = 5;
  int red_percent = 0;  // 0 leaves the system uncolored
};

// Stacked triangulation drawn at face centroids, with truncated-BFS subgraphs kept while the
// family stays non-piercing.
inline Instance gen_random_planar_nonpiercing(std::uint64_t seed, const RandomPlanarParams& p = {}) {
  if (p.vertices < 3) throw SupportError(ErrorKind::precondition, "random planar needs >= 3 vertices");
  Pcg32 rng(seed);
  std::map<VertexId, std::pair<double, double>> xy{{0, {0.0, 0.0}}, {1, {1.0, 0.0}}, {2, {0.5, 0.9}}};
  std::vector<std::array<VertexId, 3>> tri{{0, 1, 2}};
  std::vector<std::pair<VertexId, VertexId>> edges{{0, 1}, {1, 2}, {2, 0}};
  for (VertexId v = 3; v < p.vertices; ++v) {
    std::size_t k = rng.below(static_cast<std::uint32_t>(tri.size()));
    auto [a, b, c] = tri[k];
    xy[v] = {(xy[a].first + xy[b].first + xy[c].first) / 3.0, (xy[a].second + xy[b].second + xy[c].second) / 3.0};
    edges.push_back({a, v});
    edges.push_back({b, v});
    edges.push_back({c, v});
    tri[k] = {a, b, v};
    tri.push_back({b, c, v});
    tri.push_back({c, a, v});
  }
  Instance out;
  GraphSystem& s = out.system;
  s.name = "random_planar_" + std::to_string(seed);
  s.host = detail::straight_line(xy, edges);
  s.embedded = true;
  auto adj = adjacency(s.host);
  const std::size_t budget = 100 * static_cast<std::size_t>(std::max(1, p.members));
  std::size_t attempts = 0;
  while (static_cast<int>(s.family_h.size()) < p.members) {
    if (attempts++ >= budget) detail::exhausted("random planar", s.family_h.size(), p.members, attempts - 1);
    VertexId c = static_cast<VertexId>(rng.below(static_cast<std::uint32_t>(p.vertices)));
    std::size_t want = 1 + rng.below(static_cast<std::uint32_t>(p.max_member_size));
    VertexSet h{c};
    std::vector<VertexId> queue{c};
    for (std::size_t qi = 0; qi < queue.size() && h.size() < want; ++qi) {
      std::vector<VertexId> nb(adj[queue[qi]].begin(), adj[queue[qi]].end());
      for (std::size_t i = nb.size(); i > 1; --i) std::swap(nb[i - 1], nb[rng.below(static_cast<std::uint32_t>(i))]);
      for (VertexId w : nb) {
        if (h.size() >= want) break;
        if (h.insert(w).second) queue.push_back(w);
      }
    }
    GraphSystem trial = s;
    trial.family_h.push_back({"S" + std::to_string(s.family_h.size()), h});
    if (is_non_piercing(trial)) s = std::move(trial);
  }
  if (p.red_percent > 0) {
    for (VertexId v : s.host.vertices()) s.coloring[v] = rng.chance(p.red_percent) ? Color::red : Color::blue;
  }
  out.expected = {{"non_piercing", true}, {"cross_free", true}};
  return out;
}

struct RandomTwParams {
  int width = 2;
  int vertices = 12;
  int members = 5;
  int max_nodes = 3;        // tree nodes whose bags seed a member
  int drop_edge_percent = 0;
  int red_percent = 0;      // 0 leaves the system uncolored
};

// Random t-tree with its natural decomposition; members are connected pieces of the union of
// bags over a random subtree, kept while the family stays non-piercing.
inline Instance gen_random_tw_nonpiercing(std::uint64_t seed, const RandomTwParams& p = {}) {
  const int t = p.width;
  if (t < 1 || p.vertices < t + 1) {
    throw SupportError(ErrorKind::precondition, "random treewidth instance needs width >= 1 and vertices > width");
  }
  Pcg32 rng(seed);
  TreeDecomposition td;
  td.root = 0;
  std::set<std::pair<VertexId, VertexId>> edges;
  VertexSet all;
  for (VertexId v = 0; v <= t; ++v) {
    all.insert(v);
    td.bags[0].insert(v);
    for (VertexId w = 0; w < v; ++w) edges.insert({w, v});
  }
  for (VertexId v = t + 1; v < p.vertices; ++v) {
    NodeId x = static_cast<NodeId>(rng.below(static_cast<std::uint32_t>(td.bags.size())));
    std::vector<VertexId> clique(td.bags[x].begin(), td.bags[x].end());
    clique.erase(clique.begin() + rng.below(static_cast<std::uint32_t>(clique.size())));
    NodeId node = static_cast<NodeId>(td.bags.size());
    td.bags[node] = VertexSet(clique.begin(), clique.end());
    td.bags[node].insert(v);
    td.parent[node] = x;
    all.insert(v);
    for (VertexId w : clique) edges.insert({w, v});
  }
  if (p.drop_edge_percent > 0) {
    for (auto it = edges.begin(); it != edges.end();) {
      it = rng.chance(p.drop_edge_percent) ? edges.erase(it) : std::next(it);
    }
  }
  Instance out;
  GraphSystem& s = out.system;
  s.name = "random_tw_" + std::to_string(t) + "_" + std::to_string(seed);
  s.host = detail::plain_graph(all, edges);
  auto adj = adjacency(s.host);
  auto tree_nb = td.child_map();
  for (const auto& [c, par] : td.parent) tree_nb[c].push_back(par);

  const std::size_t budget = 100 * static_cast<std::size_t>(std::max(1, p.members));
  std::size_t attempts = 0;
  while (static_cast<int>(s.family_h.size()) < p.members) {
    if (attempts++ >= budget) detail::exhausted("random treewidth", s.family_h.size(), p.members, attempts - 1);
    std::vector<NodeId> nodes{static_cast<NodeId>(rng.below(static_cast<std::uint32_t>(td.bags.size())))};
    std::size_t want = 1 + rng.below(static_cast<std::uint32_t>(p.max_nodes));
    while (nodes.size() < want) {
      NodeId from = nodes[rng.below(static_cast<std::uint32_t>(nodes.size()))];
      const auto& nb = tree_nb[from];
      NodeId to = nb.empty() ? from : nb[rng.below(static_cast<std::uint32_t>(nb.size()))];
      if (std::find(nodes.begin(), nodes.end(), to) == nodes.end()) nodes.push_back(to);
      else if (nb.empty()) break;
    }
    VertexSet pool;
    for (NodeId x : nodes) pool.insert(td.bags[x].begin(), td.bags[x].end());
    std::vector<VertexId> pv(pool.begin(), pool.end());
    for (VertexId v : pv)
      if (pool.size() > 1 && rng.chance(30)) pool.erase(v);
    VertexSet h;
    if (!pool.empty()) {
      std::vector<VertexId> pl(pool.begin(), pool.end());
      h = {pl[rng.below(static_cast<std::uint32_t>(pl.size()))]};
      std::vector<VertexId> queue(h.begin(), h.end());
      for (std::size_t qi = 0; qi < queue.size(); ++qi)
        for (VertexId w : adj[queue[qi]])
          if (pool.count(w) && h.insert(w).second) queue.push_back(w);
    }
    bool repeat = false;
    for (const Subgraph& m : s.family_h) repeat = repeat || m.vertices == h;
    if (repeat) continue;
    GraphSystem trial = s;
    trial.family_h.push_back({"S" + std::to_string(s.family_h.size()), h});
    if (is_non_piercing(trial)) s = std::move(trial);
  }
  if (p.red_percent > 0) {
    for (VertexId v : s.host.vertices()) s.coloring[v] = rng.chance(p.red_percent) ? Color::red : Color::blue;
  }
  out.decomposition = std::move(td);
  out.expected = {{"non_piercing", true}};
  return out;
}

// Cycle 0..n-1 with members that are laminar arcs or unions of two disjoint laminar arcs,
// kept while the family stays abab-free.
inline CycleFamily gen_random_abab(std::uint64_t seed, int n, int m) {
  if (n < 3) throw SupportError(ErrorKind::precondition, "random abab family needs n >= 3");
  Pcg32 rng(seed);
  CycleFamily cf;
  for (int i = 0; i < n; ++i) cf.order.push_back(i);
  std::vector<VertexSet> arcs;
  auto arc = [&] {
    int start = static_cast<int>(rng.below(static_cast<std::uint32_t>(n)));
    int len = 1 + static_cast<int>(rng.below(static_cast<std::uint32_t>(n - 1)));
    VertexSet a;
    for (int k = 0; k < len; ++k) a.insert((start + k) % n);
    return a;
  };
  auto laminar = [&](const VertexSet& a) {
    for (const VertexSet& b : arcs)
      if (intersects(a, b) && !is_subset(a, b) && !is_subset(b, a)) return false;
    return true;
  };
  const std::size_t budget = 200 * static_cast<std::size_t>(std::max(1, m));
  std::size_t attempts = 0;
  while (static_cast<int>(cf.family.size()) < m) {
    if (attempts++ >= budget) detail::exhausted("random abab", cf.family.size(), m, attempts - 1);
    VertexSet a = arc();
    if (!laminar(a)) continue;
    VertexSet member = a;
    if (!arcs.empty() && rng.chance(50)) {
      const VertexSet& b = arcs[rng.below(static_cast<std::uint32_t>(arcs.size()))];
      if (!intersects(a, b)) member = set_union_of(a, b);
    }
    CycleFamily trial = cf;
    trial.family.push_back({"S" + std::to_string(cf.family.size()), member});
    if (!is_abab_free(trial)) continue;
    arcs.push_back(a);
    cf = std::move(trial);
  }
  return cf;
}

}  // namespace supports
