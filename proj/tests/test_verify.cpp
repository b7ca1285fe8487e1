#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "random_systems.hpp"
#include "supports/genus_support.hpp"
#include "supports/instances.hpp"
#include "supports/outerplanar_support.hpp"
#include "supports/treewidth_support.hpp"
#include "supports/verify.hpp"

using namespace supports;

namespace {

Adjacency complete(int n) {
  Adjacency q;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) q[a].insert(b);
  return q;
}

Adjacency cycle_adj(const std::vector<VertexId>& order) {
  Adjacency q;
  for (std::size_t i = 0; i < order.size(); ++i) {
    VertexId a = order[i], b = order[(i + 1) % order.size()];
    q[a].insert(b);
    q[b].insert(a);
  }
  return q;
}

SupportResult with_graph(RotationGraph g) {
  SupportResult r;
  r.graph = std::move(g);
  r.has_rotation = true;
  return r;
}

}  // namespace

TEST(IsSupport, TrivialCases) {
  EXPECT_TRUE(is_support({}, complete(3)));
  EXPECT_TRUE(is_support({{0, 1}, {1, 2}, {0, 2}}, complete(3)));
  EXPECT_TRUE(is_support({{}}, complete(1)));
}

TEST(IsSupport, AsteroidalDualRejectsC4) {
  Instance a = gen_asteroidal();
  SupportResult r;
  r.kind = SupportKind::dual;
  for (std::size_t i = 0; i < 4; ++i) {
    r.graph.add_vertex(static_cast<VertexId>(i));
    r.labels[static_cast<VertexId>(i)] = a.system.family_h[i].label;
  }
  for (VertexId i = 0; i < 4; ++i) r.graph.add_edge(i, (i + 1) % 4);
  SupportCheck c = verify_support(a.system, r);
  EXPECT_FALSE(c);
  ASSERT_TRUE(c.hyperedge);
  EXPECT_EQ(c.components.size(), 2u);
  r.graph.add_edge(0, 2);
  r.graph.add_edge(1, 3);
  EXPECT_TRUE(verify_support(a.system, r));
}

TEST(IsSupport, UnknownVertexThrows) {
  EXPECT_THROW(is_support({{0, 9}}, complete(3)), SupportError);
}

TEST(IsSupport, MonotoneUnderEdgeAddition) {
  std::mt19937 rng(3);
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    RandomTwParams p;
    p.width = 2;
    p.vertices = 14;
    p.members = 6;
    Instance in = gen_random_tw_nonpiercing(seed, p);
    SupportResult r = dual_tw_support(in.system, *in.decomposition);
    ASSERT_TRUE(verify_support(in.system, r));
    std::vector<VertexId> vs = r.graph.vertices();
    for (int k = 0; k < 5; ++k) {
      VertexId a = vs[rng() % vs.size()], b = vs[rng() % vs.size()];
      if (a != b) r.graph.add_edge(a, b);
      EXPECT_TRUE(verify_support(in.system, r)) << seed;
    }
  }
}

TEST(GenusCertificate, PlanarAndToroidal) {
  EXPECT_TRUE(check_genus_certificate(with_graph(circle_embedding({0, 1, 2}, {})), 0));
  EXPECT_FALSE(check_genus_certificate(with_graph(gen_torus_grid(3).system.host), 0));
  EXPECT_TRUE(check_genus_certificate(with_graph(gen_torus_grid(3).system.host), 1));
  SupportResult bare;
  EXPECT_FALSE(check_genus_certificate(bare, 5));
}

TEST(GenusCertificate, PipelineOutputsWithinHostGenus) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    RandomPlanarParams p;
    p.vertices = 10 + static_cast<int>(seed % 8);
    p.members = 3 + static_cast<int>(seed % 4);
    p.red_percent = 35;
    Instance in = gen_random_planar_nonpiercing(seed, p);
    EXPECT_TRUE(check_genus_certificate(dual_support(in.system), 0)) << seed;
    EXPECT_TRUE(check_genus_certificate(primal_support(in.system), 0)) << seed;
  }
}

TEST(Outerplanar, CycleYesK4No) {
  EXPECT_TRUE(is_outerplanar_certified(with_graph(circle_embedding({0, 1, 2, 3, 4, 5}, {}))));
  // Every rotation system of K4: two cyclic orders per vertex.
  RotationGraph k4;
  for (VertexId v = 0; v < 4; ++v) k4.add_vertex(v);
  for (VertexId a = 0; a < 4; ++a)
    for (VertexId b = a + 1; b < 4; ++b) k4.add_edge(a, b);
  int outer = 0;
  for (int mask = 0; mask < 16; ++mask) {
    RotationGraph g = k4;
    for (VertexId v = 0; v < 4; ++v) {
      std::vector<DartId> r = g.rotation(v);
      if (mask >> v & 1) std::swap(r[1], r[2]);
      g.set_rotation(v, r);
    }
    outer += is_outerplanar_certified(with_graph(g));
  }
  EXPECT_EQ(outer, 0);
}

TEST(Outerplanar, PrimalPipelineOutputs) {
  std::mt19937 rng(44);
  int done = 0;
  for (int trial = 0; trial < 60; ++trial) {
    RotationGraph host = fixtures::random_outerplanar(6 + trial % 6, rng, trial % 4);
    GraphSystem s = fixtures::random_system(host, rng, 3, 4);
    if (s.family_h.empty()) continue;
    SupportResult r = primal_outerplanar(s);
    if (r.graph.vertex_count() == 0) continue;
    EXPECT_TRUE(is_outerplanar_certified(r)) << trial;
    ++done;
  }
  EXPECT_GT(done, 30);
}

TEST(Grid, SubgraphAndInduced) {
  GridLabeling lab{{{0, 0}, 0}, {{0, 1}, 1}, {{1, 1}, 2}, {{1, 0}, 3}};
  Adjacency c4 = cycle_adj({0, 1, 2, 3});
  EXPECT_TRUE(contains_grid(c4, lab, 2));
  EXPECT_TRUE(contains_grid(c4, lab, 2, true));
  Adjacency missing = c4;
  missing[1].erase(2);
  missing[2].erase(1);
  EXPECT_FALSE(contains_grid(missing, lab, 2));
  EXPECT_TRUE(contains_grid(complete(4), lab, 2));
  EXPECT_FALSE(contains_grid(complete(4), lab, 2, true));
  EXPECT_FALSE(contains_grid(c4, lab, 3));
}

TEST(Grid, PrimalLowerBoundSupport) {
  Instance p = gen_primal_lb(3);
  SupportResult r = primal_tw_support(p.system, *p.decomposition);
  EXPECT_TRUE(contains_grid(r.graph, p.grid, 3));
}

TEST(Coloring, HeawoodValues) {
  EXPECT_EQ(heawood_bound(0), 4);
  EXPECT_EQ(heawood_bound(1), 6);
  EXPECT_EQ(heawood_bound(2), 7);
  EXPECT_EQ(heawood_bound(6), 9);
}

TEST(Coloring, PlanarSupportsWithinFourColors) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    RandomPlanarParams p;
    p.vertices = 12 + static_cast<int>(seed % 8);
    p.members = 4 + static_cast<int>(seed % 5);
    Instance in = gen_random_planar_nonpiercing(seed, p);
    SupportResult r = dual_support(in.system);
    auto col = color_support(r);
    EXPECT_LE(colors_used(col), heawood_bound(euler_genus(r.graph))) << seed;
    EXPECT_TRUE(coloring_is_good(adjacency(r.graph), col, dual_hyperedges(in.system, r))) << seed;
  }
}

TEST(Coloring, TorusSupportWithinSixColors) {
  Instance t = gen_torus_grid(4);
  SupportResult r;
  r.kind = SupportKind::dual;
  r.graph = t.system.host;
  r.has_rotation = true;
  auto col = color_support(r);
  EXPECT_LE(colors_used(col), heawood_bound(1));
  EXPECT_TRUE(coloring_is_good(adjacency(r.graph), col, {}));
}

TEST(Coloring, DecompositionGivesWidthPlusOne) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    RandomTwParams p;
    p.width = 2 + static_cast<int>(seed % 3);
    p.vertices = 12 + static_cast<int>(seed % 12);
    p.members = 4 + static_cast<int>(seed % 8);
    p.red_percent = seed % 2 ? 40 : 0;
    Instance in = gen_random_tw_nonpiercing(seed, p);
    for (const SupportResult& r : {primal_tw_support(in.system, *in.decomposition),
                                   dual_tw_support(in.system, *in.decomposition)}) {
      auto col = color_support(r);
      auto q = adjacency(r.graph);
      EXPECT_LE(colors_used(col), r.decomposition->width() + 1) << seed;
      std::vector<VertexSet> hyper =
          r.kind == SupportKind::primal ? primal_hyperedges(in.system) : dual_hyperedges(in.system, r);
      EXPECT_TRUE(coloring_is_good(q, col, hyper)) << seed;
    }
  }
}

TEST(Coloring, GreedyIsProper) {
  std::mt19937 rng(9);
  for (int round = 0; round < 30; ++round) {
    Adjacency q;
    int n = 5 + round % 10;
    for (int v = 0; v < n; ++v) q[v];
    for (int k = 0; k < 2 * n; ++k) {
      VertexId a = static_cast<VertexId>(rng() % n), b = static_cast<VertexId>(rng() % n);
      if (a == b) continue;
      q[a].insert(b);
      q[b].insert(a);
    }
    EXPECT_TRUE(coloring_is_good(q, greedy_smallest_last(q), {}));
  }
}
