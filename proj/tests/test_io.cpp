#include <gtest/gtest.h>

#include "supports.hpp"

using namespace supports;

namespace {

std::string parse_error(const std::string& text) {
  try {
    parse_document(text);
  } catch (const SupportError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parse);
    return e.what();
  }
  return "";
}

void expect_round_trip(const Document& doc) {
  Document once = normalize(doc);
  std::string text = emit_document(once);
  EXPECT_EQ(emit_document(parse_document(text)), text);
  EXPECT_TRUE(parse_document(text) == once);
}

}  // namespace

TEST(Io, MinimalSystem) {
  GraphSystem s = parse_system("vertex 0\n");
  EXPECT_EQ(s.host.vertex_count(), 1u);
  EXPECT_FALSE(s.embedded);
  EXPECT_EQ(emit_system(s), "graph system\nvertex 0\n");
  EXPECT_EQ(emit_system(parse_system(emit_system(s))), emit_system(s));
}

TEST(Io, CommentsAndColors) {
  Document d = parse_document(
      "# triangle\n"
      "graph tri\n"
      "vertex 0 color b\nvertex 1 color r   # red\nvertex 2\n"
      "edge 0 0 1\nedge 1 1 2\nedge 2 2 0\n"
      "rotation 0: 0 2\nrotation 1: 0 1\nrotation 2: 1 2\n"
      "subgraph H a: 0 1\nsubgraph K b:2\n");
  const GraphSystem& s = d.system;
  EXPECT_EQ(s.name, "tri");
  EXPECT_TRUE(s.embedded);
  EXPECT_TRUE(s.is_red(1));
  EXPECT_TRUE(s.is_blue(2));
  ASSERT_TRUE(s.family_k);
  EXPECT_EQ(s.family_k->front().vertices, VertexSet{2});
  EXPECT_EQ(euler_genus(s.host), 0);
  expect_round_trip(d);
}

TEST(Io, AsteroidalRoundTrip) {
  Instance a = gen_asteroidal();
  GraphSystem back = parse_system(emit_system(a.system));
  EXPECT_EQ(back.host, a.system.host);
  EXPECT_EQ(back.family_h, a.system.family_h);
  EXPECT_EQ(back.embedded, a.system.embedded);
  EXPECT_EQ(back.coloring, a.system.coloring);
}

TEST(Io, GeneratedCorpusRoundTrips) {
  std::vector<Instance> corpus{gen_torus_grid(4), gen_asteroidal(), gen_primal_lb(3), gen_dual_lb(3),
                               gen_stabbed_counterexamples("dual4"), gen_stabbed_counterexamples("primal4")};
  for (const char* k : {"triangle", "primal_piercing", "dual_piercing", "two_fan"}) corpus.push_back(gen_star_gadgets(k));
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    corpus.push_back(gen_random_planar_nonpiercing(seed));
    corpus.push_back(gen_random_tw_nonpiercing(seed));
  }
  for (const Instance& in : corpus) {
    Document d;
    d.system = in.system;
    d.decomposition = in.decomposition;
    expect_round_trip(d);
    Document back = parse_document(emit_document(d));
    EXPECT_EQ(euler_genus(back.system.host), euler_genus(in.system.host));
    EXPECT_EQ(back.decomposition, in.decomposition);
  }
}

TEST(Io, SupportRoundTrip) {
  Instance a = gen_asteroidal();
  SupportResult r = dual_support(a.system);
  SupportResult back = parse_support(emit_support(r));
  EXPECT_EQ(back.kind, SupportKind::dual);
  EXPECT_EQ(back.labels, r.labels);
  EXPECT_EQ(back.graph, r.graph);
  EXPECT_TRUE(verify_support(a.system, back));

  Instance t = gen_random_tw_nonpiercing(5);
  SupportResult q = dual_tw_support(t.system, *t.decomposition);
  SupportResult qb = parse_support(emit_support(q));
  EXPECT_EQ(qb.decomposition, q.decomposition);
  EXPECT_FALSE(qb.has_rotation);
}

TEST(Io, LoopsKeepTheirEmbedding) {
  RotationGraph g;
  g.add_vertex(0);
  g.add_vertex(1);
  g.add_edge(0, 0);
  g.add_edge(0, 1);
  g.add_edge(0, 1);
  g.set_rotation(0, {make_dart(0, 0), make_dart(1, 0), make_dart(0, 1), make_dart(2, 0)});
  g.set_rotation(1, {make_dart(1, 1), make_dart(2, 1)});
  Document d;
  d.system.host = g;
  d.system.embedded = true;
  Document back = parse_document(emit_document(d));
  EXPECT_EQ(euler_genus(back.system.host), euler_genus(g));
  EXPECT_EQ(faces(back.system.host).count, faces(g).count);
}

TEST(Io, ParseErrorsCarryLocation) {
  EXPECT_EQ(parse_error("vertex 0\nvertex 1\nedge 0 0 1\nrotation 0: 0\nrotation 1: 3\n"),
            "5:13: unknown edge 3");
  EXPECT_EQ(parse_error("vertex 0\nvertex 1\nedge 0 0 1\nrotation 0: 0 0\n"),
            "4:15: edge 0 is not incident to vertex 0 that many times");
  EXPECT_EQ(parse_error("vertex 0\nvertex 1\nvertex 2\nedge 0 0 1\nedge 1 0 2\nrotation 0: 0\nrotation 1: 0\nrotation 2: 1\n"),
            "6:1: rotation of vertex 0 lists 1 edge ends, degree is 2");
  EXPECT_EQ(parse_error("vertex x\n"), "1:8: expected vertex id, got 'x'");
  EXPECT_EQ(parse_error("vertex 0\nedge 0 0 4\n"), "2:10: unknown vertex 4");
  EXPECT_EQ(parse_error("vertex 0 color g\n"), "1:16: color must be r or b");
  EXPECT_EQ(parse_error("vertex 0\nsubgraph Z a: 0\n"), "2:10: family must be H or K");
  EXPECT_EQ(parse_error("vertex 0\nrotation 0 0\n"), "2:12: expected ':'");
  EXPECT_EQ(parse_error("  frobnicate\n"), "1:3: unknown keyword 'frobnicate'");
  EXPECT_EQ(parse_error("tdnode 0\ntdnode 1\n"), "1:8: tree decomposition edges do not form a tree");
  EXPECT_EQ(parse_error("vertex 0\nvertex 0\n"), "2:8: duplicate vertex 0");
}

TEST(Io, DecompositionOrientedFromRoot) {
  Document d = parse_document("vertex 0\nvertex 1\ntdnode 0\ntdnode 1 root\ntdedge 0 1\nbag 0: 0\nbag 1: 0 1\n");
  ASSERT_TRUE(d.decomposition);
  EXPECT_EQ(d.decomposition->root, 1);
  EXPECT_EQ(d.decomposition->parent.at(0), 1);
}

TEST(Io, JsonMirrorsNative) {
  Instance a = gen_asteroidal();
  Document d;
  d.system = a.system;
  auto j = to_json(d);
  EXPECT_EQ(j["vertices"].size(), a.system.host.vertex_count());
  EXPECT_EQ(j["edges"].size(), a.system.host.edge_count());
  EXPECT_EQ(j["subgraphs"]["H"].size(), a.system.family_h.size());
  EXPECT_EQ(j["subgraphs"]["H"][0]["label"], a.system.family_h[0].label);
  EXPECT_EQ(j.contains("rotation"), a.system.embedded);
}

TEST(Io, DotListsEveryEdge) {
  Instance a = gen_asteroidal();
  Document d;
  d.system = a.system;
  std::string dot = to_dot(d);
  std::size_t n = 0;
  for (std::size_t p = dot.find(" -- "); p != std::string::npos; p = dot.find(" -- ", p + 1)) ++n;
  EXPECT_EQ(n, a.system.host.edge_count());
}
