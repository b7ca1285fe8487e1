#include <gtest/gtest.h>

#include <cstdint>
#include <sstream>

#include "supports/genus_support.hpp"
#include "supports/instances.hpp"
#include "supports/treewidth_support.hpp"
#include "supports/verify.hpp"

using namespace supports;

namespace {

// FNV-1a over a canonical listing of the system.
std::uint64_t fingerprint(const GraphSystem& s) {
  std::ostringstream os;
  for (VertexId v : s.host.vertices()) os << "v" << v << ":";
  for (const auto& [v, r] : s.host.rotations()) {
    os << "r" << v;
    for (DartId d : r) os << "," << s.host.head(d);
  }
  for (const Subgraph& h : s.family_h) {
    os << "H" << h.label;
    for (VertexId v : h.vertices) os << "," << v;
  }
  for (const auto& [v, c] : s.coloring) os << "c" << v << (c == Color::red ? "r" : "b");
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : os.str()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::set<std::pair<VertexId, VertexId>> forced_pairs(const std::vector<VertexSet>& hyperedges) {
  std::set<std::pair<VertexId, VertexId>> out;
  for (const VertexSet& e : hyperedges)
    if (e.size() == 2) out.insert({*e.begin(), *e.rbegin()});
  return out;
}

// Members containing each host vertex, as member indices.
std::vector<VertexSet> member_sets(const GraphSystem& s) {
  std::vector<VertexSet> out;
  for (VertexId v : s.host.vertices()) {
    VertexSet e;
    for (std::size_t i = 0; i < s.family_h.size(); ++i)
      if (s.family_h[i].vertices.count(v)) e.insert(static_cast<VertexId>(i));
    out.push_back(e);
  }
  return out;
}

bool is_complete_on(const std::set<std::pair<VertexId, VertexId>>& pairs, const VertexSet& vs) {
  for (VertexId a : vs)
    for (VertexId b : vs)
      if (a < b && !pairs.count({a, b})) return false;
  return true;
}

}  // namespace

TEST(Pcg32, MatchesReferenceStream) {
  Pcg32 rng(42, 54);
  const std::uint32_t expected[] = {0xa15c02b7u, 0x7b47f409u, 0xba1d3330u, 0x83d2f293u, 0xbfa4784bu, 0xcbed606eu};
  for (std::uint32_t e : expected) EXPECT_EQ(rng(), e);
}

TEST(Pcg32, BoundedDrawStaysInRange) {
  Pcg32 rng(7);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) ++hits[rng.below(7)];
  for (int h : hits) EXPECT_GT(h, 800);
  EXPECT_EQ(rng.below(1), 0u);
}

TEST(TorusGrid, ShapeAndFlags) {
  Instance t3 = gen_torus_grid(3);
  EXPECT_EQ(t3.system.host.vertex_count(), 9u);
  EXPECT_EQ(t3.system.family_h.size(), 6u);
  EXPECT_EQ(euler_genus(t3.system.host), 1);
  Instance t4 = gen_torus_grid(4);
  EXPECT_TRUE(is_non_piercing(t4.system));
  EXPECT_FALSE(is_cross_free(t4.system));
  EXPECT_EQ(t4.expected.at("cross_free"), false);
  for (VertexId v : t4.system.host.vertices()) EXPECT_EQ(depth(t4.system, v), 2u);
  EXPECT_THROW(gen_torus_grid(2), SupportError);
}

TEST(Asteroidal, ForcedK4CrossFreeAndPiercing) {
  Instance a = gen_asteroidal();
  EXPECT_EQ(a.system.host.vertex_count(), 6u);
  EXPECT_EQ(a.system.host.edge_count(), 9u);
  EXPECT_EQ(euler_genus(a.system.host), 0);
  EXPECT_TRUE(is_cross_free(a.system));
  EXPECT_FALSE(is_non_piercing(a.system));
  EXPECT_TRUE(is_complete_on(forced_pairs(member_sets(a.system)), {0, 1, 2, 3}));
}

TEST(StarGadgets, Triangle) {
  Instance t = gen_star_gadgets("triangle");
  EXPECT_EQ(t.system.host.vertex_count(), 4u);
  EXPECT_EQ(t.system.family_h.size(), 3u);
  EXPECT_TRUE(is_non_piercing(t.system));
  EXPECT_TRUE(is_cross_free(t.system));
  EXPECT_TRUE(is_complete_on(forced_pairs(primal_hyperedges(t.system)), {1, 2, 3}));
}

TEST(StarGadgets, PiercingStarsForceK4) {
  Instance p = gen_star_gadgets("primal_piercing", 4);
  EXPECT_FALSE(is_non_piercing(p.system));
  EXPECT_TRUE(is_complete_on(forced_pairs(primal_hyperedges(p.system)), {1, 2, 3, 4}));
  Instance d = gen_star_gadgets("dual_piercing", 4);
  EXPECT_EQ(d.system.host.vertex_count(), 7u);
  EXPECT_FALSE(is_non_piercing(d.system));
  EXPECT_TRUE(is_complete_on(forced_pairs(member_sets(d.system)), {0, 1, 2, 3}));
  EXPECT_THROW(gen_star_gadgets("hexagon"), SupportError);
}

TEST(StarGadgets, TwoFanSeparatesTheNotions) {
  Instance f = gen_star_gadgets("two_fan");
  EXPECT_TRUE(is_cross_free(f.system));
  EXPECT_FALSE(is_non_piercing(f.system));
}

TEST(PrimalLowerBound, ConstructionAndGrid) {
  Instance p = gen_primal_lb(3);
  const int n = 2;  // ceil(1.1 * log2 3)
  std::size_t blue = 0;
  for (const auto& [v, c] : p.system.coloring) blue += c == Color::blue;
  EXPECT_EQ(blue, 9u);
  EXPECT_EQ(p.system.host.vertex_count(), 9u + 8u * n);
  EXPECT_EQ(p.system.family_h.size(), 12u);
  EXPECT_TRUE(is_non_piercing(p.system));
  ASSERT_TRUE(p.decomposition);
  EXPECT_NO_THROW(validate_decomposition(*p.decomposition, p.system.host));
  // Blue pairs of each subgraph are the grid edges, so every support has them.
  auto forced = forced_pairs(primal_hyperedges(p.system));
  EXPECT_EQ(forced.size(), 12u);
  SupportResult r = primal_tw_support(p.system, *p.decomposition);
  EXPECT_TRUE(verify_support(p.system, r));
  EXPECT_TRUE(contains_grid(r.graph, p.grid, 3));
}

TEST(PrimalLowerBound, InfeasibleSubsetCountRejected) {
  EXPECT_THROW(gen_primal_lb(1), SupportError);
  EXPECT_THROW(gen_primal_lb(7, -0.9), SupportError);
}

TEST(DualLowerBound, ConstructionAndGrid) {
  Instance d = gen_dual_lb(3);
  EXPECT_EQ(d.system.family_h.size(), 9u);
  EXPECT_TRUE(is_non_piercing(d.system));
  ASSERT_TRUE(d.decomposition);
  EXPECT_NO_THROW(validate_decomposition(*d.decomposition, d.system.host));
  // Connectors: 3 x 4 horizontal and 4 x 3 vertical, each in at most two subgraphs.
  std::size_t pairs = 0;
  for (const VertexSet& e : member_sets(d.system)) {
    if (e.size() == 2) ++pairs;
  }
  EXPECT_EQ(pairs, 12u);
  for (const auto& [a, b] : forced_pairs(member_sets(d.system))) {
    auto cell = [&](VertexId m) {
      for (const auto& [ij, id] : d.grid)
        if (id == m) return ij;
      return std::pair{-1, -1};
    };
    auto [x, y] = cell(a);
    auto [z, w] = cell(b);
    EXPECT_EQ(std::abs(x - z) + std::abs(y - w), 1);
  }
  SupportResult r = dual_tw_support(d.system, *d.decomposition);
  EXPECT_TRUE(verify_support(d.system, r));
  EXPECT_TRUE(contains_grid(r.graph, d.grid, 3));
}

TEST(StabbedCounterexamples, Dual4) {
  Instance s = gen_stabbed_counterexamples("dual4");
  EXPECT_EQ(s.system.family_h.size(), 4u);
  EXPECT_EQ(euler_genus(s.system.host), 0);
  EXPECT_TRUE(is_non_piercing(s.system));
  EXPECT_TRUE(is_cross_free(s.system));
  std::size_t depth2 = 0;
  for (VertexId v : s.system.host.vertices()) depth2 += depth(s.system, v) == 2;
  EXPECT_EQ(depth2, 6u);
  EXPECT_TRUE(is_complete_on(forced_pairs(member_sets(s.system)), {0, 1, 2, 3}));
  SupportResult r = dual_support(s.system);
  EXPECT_TRUE(verify_support(s.system, r));
  EXPECT_EQ(colors_used(color_support(r)), 4);
}

TEST(StabbedCounterexamples, Primal4) {
  Instance s = gen_stabbed_counterexamples("primal4");
  EXPECT_EQ(s.system.host.vertex_count(), 37u);
  EXPECT_EQ(euler_genus(s.system.host), 0);
  EXPECT_TRUE(is_non_piercing(s.system));
  EXPECT_TRUE(is_cross_free(s.system));
  for (const Subgraph& h : s.system.family_h) {
    std::size_t blue = 0;
    for (VertexId v : h.vertices) blue += s.system.is_blue(v);
    EXPECT_EQ(blue, 2u) << h.label;
  }
  EXPECT_TRUE(is_complete_on(forced_pairs(primal_hyperedges(s.system)), {1, 2, 3, 4}));
  SupportResult r = primal_support(s.system);
  EXPECT_TRUE(verify_support(s.system, r));
  EXPECT_EQ(colors_used(color_support(r)), 4);
  EXPECT_THROW(gen_stabbed_counterexamples("dual5"), SupportError);
}

TEST(RandomPlanar, NonPiercingAndCrossFree) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    RandomPlanarParams p;
    p.vertices = 8 + static_cast<int>(seed % 10);
    p.members = 3 + static_cast<int>(seed % 5);
    p.red_percent = seed % 2 ? 30 : 0;
    Instance in = gen_random_planar_nonpiercing(seed, p);
    EXPECT_EQ(euler_genus(in.system.host), 0);
    EXPECT_TRUE(is_non_piercing(in.system)) << seed;
    EXPECT_TRUE(is_cross_free(in.system)) << seed;
    EXPECT_EQ(in.system.family_h.size(), static_cast<std::size_t>(p.members));
  }
}

TEST(RandomTw, DecompositionValidatesAtWidth) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    RandomTwParams p;
    p.width = 3;
    p.vertices = 15;
    Instance in = gen_random_tw_nonpiercing(seed, p);
    ASSERT_TRUE(in.decomposition);
    EXPECT_NO_THROW(validate_decomposition(*in.decomposition, in.system.host));
    EXPECT_EQ(in.decomposition->width(), 3);
    EXPECT_TRUE(is_non_piercing(in.system));
    EXPECT_EQ(exact_treewidth_small(in.system.host, 15).width, 3) << seed;
  }
}

TEST(RandomTw, RejectionBudgetReportsRate) {
  RandomTwParams p;
  p.width = 1;
  p.vertices = 2;
  p.members = 10;  // only three distinct connected subsets exist
  try {
    gen_random_tw_nonpiercing(1, p);
    FAIL();
  } catch (const SupportError& e) {
    EXPECT_NE(std::string(e.what()).find("rate"), std::string::npos) << e.what();
  }
}

TEST(RandomAbab, FamiliesAreAbabFree) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    CycleFamily cf = gen_random_abab(seed, 10, 6);
    EXPECT_EQ(cf.family.size(), 6u);
    EXPECT_TRUE(is_abab_free(cf)) << seed;
  }
}

TEST(Generators, DeterministicFingerprints) {
  RandomPlanarParams pp;
  RandomTwParams tp;
  EXPECT_EQ(fingerprint(gen_random_planar_nonpiercing(1, pp).system),
            fingerprint(gen_random_planar_nonpiercing(1, pp).system));
  EXPECT_NE(fingerprint(gen_random_planar_nonpiercing(1, pp).system),
            fingerprint(gen_random_planar_nonpiercing(2, pp).system));
  const std::map<std::string, std::uint64_t> pinned = {
      {"torus4", fingerprint(gen_torus_grid(4).system)},
      {"asteroidal", fingerprint(gen_asteroidal().system)},
      {"primal_lb3", fingerprint(gen_primal_lb(3).system)},
      {"dual_lb3", fingerprint(gen_dual_lb(3).system)},
      {"dual4", fingerprint(gen_stabbed_counterexamples("dual4").system)},
      {"primal4", fingerprint(gen_stabbed_counterexamples("primal4").system)},
      {"planar1", fingerprint(gen_random_planar_nonpiercing(1, pp).system)},
      {"tw1", fingerprint(gen_random_tw_nonpiercing(1, tp).system)},
  };
  const std::map<std::string, std::uint64_t> expected = {
      {"torus4", 0x63e8f4f17ce15501ULL},  {"asteroidal", 0xef349359b15ece77ULL},
      {"primal_lb3", 0x241049a482ac1f91ULL}, {"dual_lb3", 0x77b70e79da426d39ULL},
      {"dual4", 0x02923a373f802174ULL},   {"primal4", 0xfcc77f56ae3c38a3ULL},
      {"planar1", 0xb9bf5db23839063dULL}, {"tw1", 0x7f03e7743a606e3eULL},
  };
  for (const auto& [name, h] : pinned) EXPECT_EQ(h, expected.at(name)) << name << " = 0x" << std::hex << h;
}
