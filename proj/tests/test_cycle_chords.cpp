#include <gtest/gtest.h>

#include <random>

#include "supports/cycle_chords.hpp"

using namespace supports;

namespace {

CycleFamily cyc(int n, std::vector<Subgraph> fam) {
  CycleFamily cf;
  for (int i = 0; i < n; ++i) cf.order.push_back(i);
  cf.family = std::move(fam);
  return cf;
}

bool all_connected(const CycleFamily& cf, const std::vector<Chord>& d) {
  auto adj = cycle_with_chords(cf.order, d);
  for (const Subgraph& s : cf.family) {
    if (!induces_connected(adj, s.vertices)) return false;
  }
  return true;
}

bool non_crossing(const CycleFamily& cf, const std::vector<Chord>& d) {
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j)
      if (chords_cross(cf.order, d[i], d[j])) return false;
  return true;
}

// Independent abab test: brute force over all ordered 4-tuples of positions.
bool abab_brute(const CycleFamily& cf) {
  const std::size_t n = cf.order.size();
  for (const Subgraph& h : cf.family)
    for (const Subgraph& k : cf.family) {
      if (&h == &k) continue;
      auto a = [&](std::size_t i) { return h.vertices.count(cf.order[i]) && !k.vertices.count(cf.order[i]); };
      auto b = [&](std::size_t i) { return k.vertices.count(cf.order[i]) && !h.vertices.count(cf.order[i]); };
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q)
          for (std::size_t r = q + 1; r < n; ++r)
            for (std::size_t s = r + 1; s < n; ++s)
              if (a(p) && b(q) && a(r) && b(s)) return false;
    }
  return true;
}

}  // namespace

TEST(CycleChords, RunsListedClockwise) {
  CycleFamily cf = cyc(8, {});
  auto r = runs(cf, {7, 0, 3, 4});
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0], (std::vector<VertexId>{3, 4}));
  EXPECT_EQ(r[1], (std::vector<VertexId>{7, 0}));
  EXPECT_EQ(runs(cf, {0, 1, 2, 3, 4, 5, 6, 7}).size(), 1u);
  EXPECT_TRUE(runs(cf, {}).empty());
}

TEST(CycleChords, AbabWitnessOnSixCycle) {
  CycleFamily cf = cyc(6, {{"H", {0, 3}}, {"K", {2, 4}}});
  PatternResult r = is_abab_free(cf);
  ASSERT_FALSE(r);
  EXPECT_EQ(r.witness->vertices, (std::array<VertexId, 4>{0, 2, 3, 4}));
}

TEST(CycleChords, AxaxDiffersFromAbab) {
  // A nested pair is free of both patterns; a piercing pair shows axax.
  CycleFamily nested = cyc(6, {{"H", {0, 1, 2}}, {"K", {1}}});
  EXPECT_TRUE(is_abab_free(nested));
  EXPECT_TRUE(is_axax_free(nested));
  CycleFamily pierce = cyc(6, {{"H", {0, 1, 2, 3}}, {"K", {1, 3, 4}}});
  EXPECT_FALSE(is_axax_free(pierce));
}

TEST(CycleChords, BlockingDefinition) {
  CycleFamily cf = cyc(8, {});
  EXPECT_TRUE(blocks(cf, {0, 4}, {2, 6}));
  EXPECT_FALSE(blocks(cf, {0, 4}, {2, 3}));
  EXPECT_FALSE(blocks(cf, {0, 4}, {0, 6}));
}

TEST(CycleChords, FourCycleCompletionAddsOneChord) {
  CycleFamily cf = cyc(4, {{"A", {1, 3}}});
  auto d = connect_all(cf);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0], (Chord{1, 3}));
}

TEST(CycleChords, FoundChordBlocksNothingOnEightCycle) {
  // Exhaustive: every abab-free family of up to three members on C8 with a multi-run member.
  CycleFamily base = cyc(8, {});
  std::mt19937 rng(7);
  int checked = 0;
  for (int trial = 0; trial < 4000 && checked < 600; ++trial) {
    CycleFamily cf = base;
    int m = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < m; ++i) {
      VertexSet s;
      unsigned mask = 0;
      while (mask == 0) mask = rng() & 0xff;
      for (int v = 0; v < 8; ++v) if (mask >> v & 1) s.insert(v);
      cf.family.push_back({std::to_string(i), s});
    }
    if (!abab_brute(cf)) {
      EXPECT_FALSE(is_abab_free(cf));
      continue;
    }
    ASSERT_TRUE(is_abab_free(cf));
    bool multi = false;
    for (const auto& s : cf.family) multi = multi || run_count(cf, s.vertices) > 1;
    if (!multi) continue;
    ChordFinding f = find_nonblocking_chord(cf);
    const VertexSet& k0 = cf.family[f.member].vertices;
    EXPECT_TRUE(k0.count(f.chord.x) && k0.count(f.chord.y));
    for (const auto& s : cf.family) EXPECT_FALSE(blocks(cf, f.chord, s.vertices));
    EXPECT_TRUE(f.invariants_held);
    auto d = connect_all(cf);
    EXPECT_TRUE(all_connected(cf, d));
    EXPECT_TRUE(non_crossing(cf, d));
    ++checked;
  }
  EXPECT_GE(checked, 300);
}

TEST(CycleChords, CompletionOnLongCyclesIsNonCrossingAndConnects) {
  std::mt19937 rng(11);
  int checked = 0;
  for (int trial = 0; trial < 20000 && checked < 500; ++trial) {
    int n = 6 + static_cast<int>(rng() % 10);
    CycleFamily cf = cyc(n, {});
    int m = 2 + static_cast<int>(rng() % 4);
    for (int i = 0; i < m; ++i) {
      VertexSet s;
      for (int v = 0; v < n; ++v) if (rng() % 3 == 0) s.insert(v);
      if (s.empty()) s.insert(static_cast<VertexId>(rng() % n));
      cf.family.push_back({std::to_string(i), s});
    }
    if (!is_abab_free(cf)) continue;
    auto d = connect_all(cf);
    EXPECT_TRUE(all_connected(cf, d));
    EXPECT_TRUE(non_crossing(cf, d));
    ++checked;
  }
  EXPECT_GE(checked, 500);
}

TEST(CycleChords, NonAbabFreeFamilyIsRejected) {
  CycleFamily cf = cyc(6, {{"H", {0, 3}}, {"K", {2, 4}}});
  EXPECT_THROW(connect_all(cf), SupportError);
}

TEST(CycleChords, CircleEmbeddingIsOuterplanar) {
  std::vector<VertexId> order{5, 2, 9, 1, 7, 3};
  RotationGraph g = circle_embedding(order, {{5, 9}, {5, 1}, {9, 1}, {7, 5}, {2, 9}});
  EXPECT_EQ(euler_genus(g), 0);
  // Adding a vertex joined to every cycle vertex stays planar only if all lie on one face.
  bool found = false;
  for (const auto& f : faces(g).faces) {
    VertexSet seen;
    for (DartId d : f) seen.insert(g.origin(d));
    if (seen.size() == order.size()) found = true;
  }
  EXPECT_TRUE(found);
}
