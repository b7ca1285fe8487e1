#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "random_systems.hpp"
#include "supports/outerplanar_support.hpp"
#include "supports/verify.hpp"

using namespace supports;

namespace {

GraphSystem on_cycle(int n, std::vector<Subgraph> fam) {
  GraphSystem s;
  s.host = fixtures::cycle_graph(n);
  s.embedded = true;
  s.family_h = std::move(fam);
  return s;
}

GraphSystem asteroidal() {
  GraphSystem s;
  std::vector<std::pair<VertexId, VertexId>> e = {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6},
                                                  {6, 1}, {2, 4}, {2, 6}, {4, 6}};
  std::map<VertexId, std::pair<double, double>> xy;
  for (int i = 1; i <= 6; ++i) {
    xy[i] = {std::cos(6.283185307179586 * i / 6), std::sin(6.283185307179586 * i / 6)};
  }
  s.host = fixtures::straight_line(xy, e);
  s.embedded = true;
  s.family_h = {{"A", {1, 2, 3}}, {"B", {3, 4, 5}}, {"C", {5, 6, 1}}, {"D", {2, 4, 6}}};
  return s;
}

std::set<std::pair<VertexId, VertexId>> edge_pairs(const RotationGraph& g) {
  std::set<std::pair<VertexId, VertexId>> out;
  for (const auto& [e, ed] : g.edges()) out.insert(std::minmax(ed.a, ed.b));
  return out;
}

// Gap lengths between consecutive runs, found by scanning every cyclic position.
std::vector<std::size_t> brute_gaps(const std::vector<VertexId>& order, const VertexSet& h) {
  const std::size_t n = order.size();
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!h.count(order[i]) || h.count(order[(i + 1) % n])) continue;
    std::size_t len = 0;
    std::size_t j = (i + 1) % n;
    while (!h.count(order[j])) {
      ++len;
      j = (j + 1) % n;
    }
    if (j != i) out.push_back(len);
  }
  if (out.size() < 2) out.clear();  // a single run has no good chord
  return out;
}

}  // namespace

TEST(OuterplanarSupport, AllBlueCycleIsHost) {
  GraphSystem s = on_cycle(6, {{"A", {0, 1, 2}}, {"B", {3, 4}}});
  for (VertexId v : s.host.vertices()) s.coloring[v] = Color::blue;
  SupportResult r = primal_outerplanar(s);
  EXPECT_EQ(edge_pairs(r.graph), edge_pairs(s.host));
  EXPECT_TRUE(verify_support(s, r));
}

TEST(OuterplanarSupport, StarPrimalIsTriangle) {
  GraphSystem s;
  s.host = fixtures::straight_line({{0, {0, 0}}, {1, {0, 2}}, {2, {-2, -1}}, {3, {2, -1}}},
                                   {{0, 1}, {0, 2}, {0, 3}});
  s.embedded = true;
  s.family_h = {{"H0", {1, 0, 2}}, {"H1", {2, 0, 3}}, {"H2", {3, 0, 1}}};
  for (VertexId v : s.host.vertices()) s.coloring[v] = v == 0 ? Color::red : Color::blue;
  SupportResult r = primal_outerplanar(s);
  EXPECT_EQ(edge_pairs(r.graph), (std::set<std::pair<VertexId, VertexId>>{{1, 2}, {1, 3}, {2, 3}}));
  EXPECT_TRUE(verify_support(s, r));
  EXPECT_TRUE(is_outerplanar_certified(r));
}

TEST(OuterplanarSupport, AsteroidalTripleRejected) {
  GraphSystem s = asteroidal();
  EXPECT_TRUE(is_cross_free(s));
  try {
    dual_outerplanar(s);
    FAIL() << "piercing system accepted";
  } catch (const SupportError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::piercing);
    EXPECT_NE(std::string(e.what()).find("asteroidal"), std::string::npos);
  }
}

TEST(OuterplanarSupport, SingleRunArcsGiveTriangle) {
  GraphSystem s = on_cycle(6, {{"A", {0, 1, 2}}, {"B", {2, 3, 4}}, {"C", {4, 5, 0}}});
  SupportResult r = dual_outerplanar(s);
  EXPECT_EQ(edge_pairs(r.graph), (std::set<std::pair<VertexId, VertexId>>{{0, 1}, {0, 2}, {1, 2}}));
  EXPECT_TRUE(verify_support(s, r));
  EXPECT_TRUE(is_outerplanar_certified(r));
}

TEST(OuterplanarSupport, NotOuterplanarHostRejected) {
  GraphSystem s;
  s.host = fixtures::planar_grid(3, 3);
  s.embedded = true;
  s.family_h = {{"A", {0, 1}}};
  EXPECT_THROW(outer_order(s), SupportError);
}

TEST(OuterplanarSupport, CriticalChordIsShortestGoodChord) {
  std::mt19937 rng(11);
  int checked = 0;
  for (int trial = 0; trial < 500; ++trial) {
    CycleFamily cf;
    const int n = 6 + static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) cf.order.push_back(i);
    for (int m = 0; m < 3; ++m) {
      VertexSet h;
      for (int i = 0; i < n; ++i)
        if (rng() % 3 == 0) h.insert(i);
      if (!h.empty()) cf.family.push_back({"M" + std::to_string(m), h});
    }
    std::optional<std::size_t> shortest;
    for (const Subgraph& h : cf.family) {
      for (std::size_t g : brute_gaps(cf.order, h.vertices)) {
        shortest = std::min(shortest.value_or(g), g);
      }
    }
    auto crit = critical_chord(cf);
    ASSERT_EQ(crit.has_value(), shortest.has_value()) << trial;
    if (!crit) continue;
    EXPECT_EQ(crit->length, *shortest) << trial;
    const VertexSet& h = cf.family[crit->member].vertices;
    EXPECT_TRUE(h.count(crit->u1) && h.count(crit->u2));
    for (VertexId v : open_arc(cf, crit->u1, crit->u2)) EXPECT_FALSE(h.count(v)) << trial;
    ++checked;
  }
  EXPECT_GE(checked, 300);
}

TEST(OuterplanarSupport, RandomPrimal) {
  std::mt19937 rng(21);
  int done = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 5 + trial % 8;
    RotationGraph host = fixtures::random_outerplanar(n, rng, trial % 6);
    GraphSystem s = fixtures::random_system(host, rng, 2 + trial % 5, 1 + n / 2);
    if (s.family_h.empty()) continue;
    for (VertexId v : s.host.vertices()) s.coloring[v] = rng() % 3 ? Color::blue : Color::red;
    SupportResult r;
    try {
      r = primal_outerplanar(s);
    } catch (const SupportError& e) {
      ADD_FAILURE() << trial << ": " << e.what();
      continue;
    }
    EXPECT_TRUE(verify_support(s, r)) << trial;
    if (r.graph.vertex_count() > 0) {
      EXPECT_TRUE(is_outerplanar_certified(r)) << trial;
    }
    ++done;
  }
  EXPECT_GE(done, 400);
}

TEST(OuterplanarSupport, RandomDual) {
  std::mt19937 rng(22);
  int done = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 5 + trial % 8;
    RotationGraph host = fixtures::random_outerplanar(n, rng, trial % 6);
    GraphSystem s = fixtures::random_system(host, rng, 2 + trial % 6, 1 + n / 2, true);
    if (s.family_h.empty()) continue;
    // Non-piercing outerplanar systems are axax-free on the outer cycle.
    CycleFamily cf{outer_order(s), s.family_h};
    EXPECT_TRUE(is_axax_free(cf)) << trial;
    SupportResult r;
    try {
      r = dual_outerplanar(s);
    } catch (const SupportError& e) {
      ADD_FAILURE() << trial << ": " << e.what();
      continue;
    }
    EXPECT_TRUE(verify_support(s, r)) << trial;
    EXPECT_TRUE(is_outerplanar_certified(r)) << trial;
    // Every split removes at least one run, so splits never exceed the initial run surplus.
    auto kept = remove_containments(s.family_h).first;
    std::size_t splits = std::count_if(r.trace.begin(), r.trace.end(), [](const std::string& t) {
      return t.rfind("critical chord", 0) == 0;
    });
    EXPECT_LE(splits, chord_cost(CycleFamily{cf.order, kept})) << trial;
    ++done;
  }
  EXPECT_GE(done, 400);
}
