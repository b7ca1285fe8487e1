#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "supports/rotation_graph.hpp"

namespace fixtures {

using supports::DartId;
using supports::RotationGraph;
using supports::VertexId;

// Sorts each rotation by the angle of the neighbor's coordinates (counter-clockwise).
inline RotationGraph straight_line(const std::map<VertexId, std::pair<double, double>>& xy,
                                   const std::vector<std::pair<VertexId, VertexId>>& edges) {
  RotationGraph g;
  for (const auto& [v, p] : xy) g.add_vertex(v);
  for (const auto& [a, b] : edges) g.add_edge(a, b);
  for (const auto& [v, p] : xy) {
    std::vector<DartId> r = g.rotation(v);
    std::sort(r.begin(), r.end(), [&](DartId x, DartId y) {
      auto q1 = xy.at(g.head(x)), q2 = xy.at(g.head(y));
      return std::atan2(q1.second - p.second, q1.first - p.first) <
             std::atan2(q2.second - p.second, q2.first - p.first);
    });
    g.set_rotation(v, r);
  }
  return g;
}

// r x c grid on the torus; vertex i*c+j, rotation (right, up, left, down).
inline RotationGraph torus_grid(int r, int c) {
  RotationGraph g;
  for (int v = 0; v < r * c; ++v) g.add_vertex(v);
  std::map<VertexId, std::vector<DartId>> rot;
  std::map<std::pair<int, int>, supports::EdgeId> right, down;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) right[{i, j}] = g.add_edge(i * c + j, i * c + (j + 1) % c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) down[{i, j}] = g.add_edge(i * c + j, ((i + 1) % r) * c + j);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) {
      g.set_rotation(i * c + j, {supports::make_dart(right[{i, j}], 0),
                                 supports::make_dart(down[{(i + r - 1) % r, j}], 1),
                                 supports::make_dart(right[{i, (j + c - 1) % c}], 1),
                                 supports::make_dart(down[{i, j}], 0)});
    }
  }
  return g;
}

inline RotationGraph planar_k4() {
  return straight_line({{0, {0, 0}}, {1, {0, 3}}, {2, {-3, -2}}, {3, {3, -2}}},
                       {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}, {3, 1}});
}

inline RotationGraph planar_grid(int r, int c) {
  std::map<VertexId, std::pair<double, double>> xy;
  std::vector<std::pair<VertexId, VertexId>> e;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) {
      xy[i * c + j] = {double(j), double(i)};
      if (j + 1 < c) e.push_back({i * c + j, i * c + j + 1});
      if (i + 1 < r) e.push_back({i * c + j, (i + 1) * c + j});
    }
  return straight_line(xy, e);
}

inline RotationGraph cycle_graph(int n) {
  std::map<VertexId, std::pair<double, double>> xy;
  std::vector<std::pair<VertexId, VertexId>> e;
  for (int i = 0; i < n; ++i) {
    xy[i] = {std::cos(6.283185307179586 * i / n), std::sin(6.283185307179586 * i / n)};
    e.push_back({i, (i + 1) % n});
  }
  return straight_line(xy, e);
}

}  // namespace fixtures
