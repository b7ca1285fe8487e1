#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "supports_cli.hpp"

using namespace supports;
namespace app = supports::cli;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = app::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("supports_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    std::string p = (dir_ / name).string();
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string gen(const std::string& name, std::vector<std::string> args) {
    args.insert(args.begin(), "gen");
    Outcome r = invoke(args);
    EXPECT_EQ(r.code, 0) << r.err;
    return write(name, r.out);
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, TorusGridIsNotCrossFree) {
  std::string f = gen("torus.txt", {"torus-grid", "n=4"});
  Outcome r = invoke({"check", "--cross-free", f});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("witness:"), std::string::npos);
  EXPECT_EQ(invoke({"check", "--non-piercing", f}).code, 0);
}

TEST_F(Cli, TwoFanChecks) {
  std::string f = gen("fan.txt", {"star", "two_fan"});
  EXPECT_EQ(invoke({"check", "--cross-free", f}).code, 0);
  EXPECT_EQ(invoke({"check", "--non-piercing", f}).code, 1);
}

TEST_F(Cli, StarBuildsTriangle) {
  std::string f = gen("star.txt", {"star", "triangle"});
  Outcome r = invoke({"build", "primal", f, "--mode", "genus"});
  ASSERT_EQ(r.code, 0) << r.err;
  SupportResult s = parse_support(r.out);
  EXPECT_EQ(s.graph.vertex_count(), 3u);
  EXPECT_EQ(s.graph.edge_count(), 3u);
  for (VertexId v : s.graph.vertices()) EXPECT_EQ(s.graph.degree(v), 2u);
}

TEST_F(Cli, VerifyRejectsTamperedSupport) {
  std::string f = gen("ast.txt", {"asteroidal"});
  Outcome b = invoke({"build", "dual", f});
  ASSERT_EQ(b.code, 0) << b.err;
  std::string good = write("good.txt", b.out);
  EXPECT_EQ(invoke({"verify", good, "--against", f}).code, 0);

  SupportResult s = parse_support(b.out);
  EdgeId first = s.graph.edges().begin()->first;
  s.graph.remove_edge(first);
  std::string bad = write("bad.txt", emit_support(s));
  Outcome v = invoke({"verify", bad, "--against", f});
  EXPECT_EQ(v.code, 1);
  EXPECT_NE(v.out.find("fail"), std::string::npos);
}

TEST_F(Cli, TreewidthBuildNeedsDecomposition) {
  std::string f = gen("tw.txt", {"random-tw", "width=3", "vertices=16", "members=6", "--seed", "9"});
  EXPECT_EQ(invoke({"check", "--td", f}).code, 0);
  for (const char* kind : {"primal", "dual"}) {
    Outcome r = invoke({"build", kind, f, "--mode", "treewidth"});
    EXPECT_EQ(r.code, 0) << r.err;
    std::string s = write(std::string(kind) + ".txt", r.out);
    EXPECT_EQ(invoke({"verify", s, "--against", f}).code, 0);
    EXPECT_EQ(invoke({"color", s, "--against", f}).code, 0);
  }
  std::string bare = write("bare.txt", "vertex 0\nsubgraph H a: 0\n");
  EXPECT_EQ(invoke({"build", "primal", bare, "--mode", "treewidth"}).code, 2);
}

TEST_F(Cli, TraceReplaysDeterministically) {
  std::string f = gen("pl.txt", {"random-planar", "members=7", "red_percent=30", "--seed", "11"});
  Outcome a = invoke({"--trace", path("t1"), "build", "dual", f});
  Outcome b = invoke({"--trace", path("t2"), "build", "dual", f});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  std::ifstream t1(path("t1")), t2(path("t2"));
  std::stringstream s1, s2;
  s1 << t1.rdbuf();
  s2 << t2.rdbuf();
  EXPECT_FALSE(s1.str().empty());
  EXPECT_EQ(s1.str(), s2.str());
}

TEST_F(Cli, CapExceededIsFailure) {
  std::string f = gen("pl.txt", {"random-planar", "--seed", "2"});
  Outcome r = invoke({"--cap", "2", "build", "dual", f});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("cap"), std::string::npos);
}

TEST_F(Cli, UsageAndParseErrors) {
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"check", "--td"}).code, 2);
  EXPECT_EQ(invoke({"check", path("missing.txt"), "--td"}).code, 2);
  EXPECT_EQ(invoke({"gen", "nonsense"}).code, 2);
  EXPECT_EQ(invoke({"gen", "torus-grid", "q=3"}).code, 2);
  EXPECT_EQ(invoke({"--format", "xml", "gen", "asteroidal"}).code, 2);
  std::string bad = write("bad.txt", "vertex 0\nvertex 1\nedge 0 0 1\nrotation 0: 0\nrotation 1: 9\n");
  Outcome r = invoke({"stats", bad});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find(":5:13:"), std::string::npos) << r.err;
  EXPECT_EQ(invoke({"build", "intersection", bad, "--mode", "outerplanar"}).code, 2);
}

TEST_F(Cli, FormatsAndStats) {
  Outcome j = invoke({"--format", "json", "gen", "asteroidal"});
  ASSERT_EQ(j.code, 0);
  EXPECT_EQ(nlohmann::json::parse(j.out)["graph"], "asteroidal");
  std::string f = gen("ast.txt", {"asteroidal"});
  Outcome d = invoke({"export-dot", f});
  EXPECT_EQ(d.out.rfind("graph ", 0), 0u);
  Outcome s = invoke({"stats", f, f});
  EXPECT_EQ(s.code, 0);
  EXPECT_NE(s.out.find("cross_free yes"), std::string::npos);
}

TEST_F(Cli, GeneratedAbabFamiliesPassChecks) {
  for (int seed = 1; seed <= 5; ++seed) {
    std::string f = gen("ab" + std::to_string(seed), {"random-abab", "n=10", "m=4", "--seed", std::to_string(seed)});
    EXPECT_EQ(invoke({"check", "--abab", f}).code, 0);
  }
}
