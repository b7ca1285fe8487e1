// Runs the ten acceptance criteria and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "random_systems.hpp"
#include "supports.hpp"

using namespace supports;

namespace {

int pow2(int t) { return 1 << t; }

struct Verdict {
  bool pass = true;
  std::vector<std::string> failures;
  std::string summary;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

bool not_applicable(const SupportError& e) {
  return e.kind() == ErrorKind::precondition || e.kind() == ErrorKind::not_cross_free ||
         e.kind() == ErrorKind::piercing;
}

// ---------------------------------------------------------------------------------------------
// Instance corpus

struct Pipeline {
  std::string name;
  std::function<SupportResult(const GraphSystem&, const std::optional<TreeDecomposition>&)> run;
};

std::vector<Pipeline> pipelines() {
  auto need_td = [](const std::optional<TreeDecomposition>& td) -> const TreeDecomposition& {
    if (!td) throw SupportError(ErrorKind::precondition, "no decomposition");
    return *td;
  };
  return {
      {"genus/primal", [](const GraphSystem& s, const auto&) { return primal_support(s); }},
      {"genus/dual", [](const GraphSystem& s, const auto&) { return dual_support(s); }},
      {"genus/intersection", [](const GraphSystem& s, const auto&) { return intersection_support(s); }},
      {"outerplanar/primal", [](const GraphSystem& s, const auto&) { return primal_outerplanar(s); }},
      {"outerplanar/dual", [](const GraphSystem& s, const auto&) { return dual_outerplanar(s); }},
      {"treewidth/primal", [need_td](const GraphSystem& s, const auto& td) { return primal_tw_support(s, need_td(td)); }},
      {"treewidth/dual", [need_td](const GraphSystem& s, const auto& td) { return dual_tw_support(s, need_td(td)); }},
  };
}

struct Case {
  std::string name;
  GraphSystem system;
  std::optional<TreeDecomposition> td;
};

std::vector<Case> fixture_corpus() {
  std::vector<Case> out;
  auto add = [&](const std::string& name, const Instance& in) { out.push_back({name, in.system, in.decomposition}); };
  add("torus_grid_3", gen_torus_grid(3));
  add("torus_grid_4", gen_torus_grid(4));
  add("asteroidal", gen_asteroidal());
  for (const char* k : {"triangle", "primal_piercing", "dual_piercing", "two_fan"}) add(std::string("star_") + k, gen_star_gadgets(k));
  for (int n : {3, 4}) {
    add("primal_lb_" + std::to_string(n), gen_primal_lb(n));
    add("dual_lb_" + std::to_string(n), gen_dual_lb(n));
  }
  add("stabbed_dual4", gen_stabbed_counterexamples("dual4"));
  add("stabbed_primal4", gen_stabbed_counterexamples("primal4"));
  // Small fixtures get an exact decomposition so the width pipelines see them too.
  for (Case& c : out) {
    if (!c.td && c.system.host.vertex_count() <= 14) c.td = exact_treewidth_small(c.system.host).decomposition;
  }
  return out;
}

RotationGraph random_genus_host(int trial) {
  switch (trial % 4) {
    case 0: return fixtures::planar_grid(3 + trial % 3, 4 + trial % 3);
    case 1: return fixtures::torus_grid(3 + trial % 2, 3 + trial % 3);
    case 2: return fixtures::planar_k4();
    default: return fixtures::planar_grid(5, 6);
  }
}

void random_coloring(GraphSystem& s, std::mt19937& rng, int red_in_3) {
  for (VertexId v : s.host.vertices()) s.coloring[v] = static_cast<int>(rng() % 3) < red_in_3 ? Color::red : Color::blue;
}

// Seeded random instances for one pipeline: hosts of at most 30 vertices, families of at most 12.
std::vector<Case> random_corpus(const std::string& pipeline, int count) {
  std::vector<Case> out;
  std::uint32_t h = 2166136261u;  // FNV-1a of the pipeline name
  for (unsigned char ch : pipeline) h = (h ^ ch) * 16777619u;
  std::mt19937 rng(h);
  int trial = 0;
  while (static_cast<int>(out.size()) < count && trial < 50 * count) {
    ++trial;
    Case c;
    c.name = pipeline + "#" + std::to_string(trial);
    if (pipeline.rfind("genus/", 0) == 0) {
      if (trial % 2 == 0) {
        RandomPlanarParams p;
        p.vertices = 10 + trial % 21;
        p.members = 2 + trial % 11;
        p.red_percent = pipeline == "genus/primal" ? 30 : 0;
        c.system = gen_random_planar_nonpiercing(static_cast<std::uint64_t>(trial), p).system;
      } else {
        c.system = fixtures::random_system(random_genus_host(trial), rng, 2 + trial % 11, 6);
        if (c.system.family_h.empty()) continue;
        if (pipeline == "genus/primal") random_coloring(c.system, rng, 1);
      }
      if (pipeline == "genus/intersection") {
        GraphSystem k = fixtures::random_system(c.system.host, rng, 1 + trial % 6, 6);
        if (k.family_h.empty()) continue;
        c.system.family_k = k.family_h;
      }
    } else if (pipeline.rfind("outerplanar/", 0) == 0) {
      const int n = 5 + trial % 26;
      RotationGraph host = fixtures::random_outerplanar(n, rng, trial % 8);
      bool dual = pipeline == "outerplanar/dual";
      c.system = fixtures::random_system(host, rng, 2 + trial % 11, 1 + n / 2, dual);
      if (c.system.family_h.empty()) continue;
      if (!dual) random_coloring(c.system, rng, 1);
    } else {
      RandomTwParams p;
      p.width = 2 + trial % 3;
      p.vertices = 12 + (trial * 7) % 19;
      p.members = 4 + trial % 9;
      p.max_nodes = 1 + trial % 4;
      p.drop_edge_percent = trial % 4 == 0 ? 25 : 0;
      p.red_percent = pipeline == "treewidth/primal" && trial % 2 ? 40 : 0;
      Instance in = gen_random_tw_nonpiercing(static_cast<std::uint64_t>(trial), p);
      c.system = in.system;
      c.td = in.decomposition;
    }
    out.push_back(std::move(c));
  }
  return out;
}

struct GenusRun {
  GraphSystem system;
  SupportResult result;
};

std::vector<GenusRun> genus_runs;  // filled by criterion 1, read by 2 and 8

// ---------------------------------------------------------------------------------------------

Verdict universal_oracle() {
  Verdict v;
  auto start = std::chrono::steady_clock::now();
  std::ostringstream counts;
  std::size_t total = 0;
  for (const Pipeline& p : pipelines()) {
    std::vector<Case> cases = fixture_corpus();
    std::size_t fixtures_run = 0;
    std::vector<Case> random = random_corpus(p.name, 200);
    v.expect(random.size() >= 200, p.name + ": only " + std::to_string(random.size()) + " random instances");
    std::size_t random_begin = cases.size();
    for (Case& c : random) cases.push_back(std::move(c));
    for (std::size_t i = 0; i < cases.size(); ++i) {
      const Case& c = cases[i];
      if (i >= random_begin) {
        v.expect(c.system.host.vertex_count() <= 30 && c.system.family_h.size() <= 12, c.name + ": out of range");
      }
      SupportResult r;
      try {
        r = p.run(c.system, c.td);
      } catch (const SupportError& e) {
        if (i < random_begin && not_applicable(e)) continue;
        v.expect(false, p.name + " on " + c.name + ": " + e.what());
        continue;
      }
      if (i < random_begin) ++fixtures_run;
      v.expect(bool(verify_support(c.system, r)), p.name + " on " + c.name + ": not a support");
      if (p.name.rfind("genus/", 0) == 0) genus_runs.push_back({c.system, r});
      ++total;
    }
    counts << ' ' << p.name << '=' << fixtures_run << "+" << random.size();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  v.expect(secs < 300, "runtime " + std::to_string(secs) + " s exceeds 5 min");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f s", secs);
  v.summary = std::to_string(total) + " supports verified (fixtures+random:" + counts.str() + ") in " + buf;
  return v;
}

Verdict genus_bound() {
  Verdict v;
  std::size_t toroidal = 0;
  for (const GenusRun& g : genus_runs) {
    int host = euler_genus(g.system.host);
    toroidal += host == 1;
    v.expect(g.result.has_rotation && euler_genus(g.result.graph) <= host,
             g.system.name + ": support genus above host genus " + std::to_string(host));
    v.expect(check_genus_certificate(g.result, host), g.system.name + ": certificate rejected");
  }
  v.expect(toroidal > 0, "no toroidal host exercised");
  v.expect(!genus_runs.empty(), "criterion 1 produced no genus runs");
  v.summary = std::to_string(genus_runs.size()) + " genus supports, " + std::to_string(toroidal) + " on genus-1 hosts";
  return v;
}

bool simple_graph(const RotationGraph& g) {
  std::set<std::pair<VertexId, VertexId>> seen;
  for (const auto& [e, ed] : g.edges()) {
    if (ed.is_loop() || !seen.insert(std::minmax(ed.a, ed.b)).second) return false;
  }
  return true;
}

Verdict forced_supports() {
  Verdict v;
  SupportResult tri = primal_support(gen_star_gadgets("triangle").system);
  bool cycle = tri.graph.vertex_count() == 3 && tri.graph.edge_count() == 3 && simple_graph(tri.graph);
  v.expect(cycle, "star primal support is not a 3-cycle");

  SupportResult k4 = dual_support(gen_asteroidal().system);
  bool complete = k4.graph.vertex_count() == 4 && k4.graph.edge_count() == 6 && simple_graph(k4.graph);
  v.expect(complete, "asteroidal dual support is not K4");

  Instance torus = gen_torus_grid(4);
  CrossFreeResult cf = is_cross_free(torus.system);
  v.expect(!cf.holds && cf.witness.has_value(), "torus grid reported cross-free or without witness");

  Instance fan = gen_star_gadgets("two_fan");
  v.expect(bool(is_cross_free(fan.system)), "two-fan not cross-free");
  v.expect(!is_non_piercing(fan.system), "two-fan reported non-piercing");
  v.summary = "star->C3, asteroidal->K4, torus witness, two-fan separation";
  return v;
}

// Independent of the library: a chord blocks k when it avoids k and k lies on both sides.
bool brute_blocks(const std::vector<VertexId>& order, const Chord& d, const VertexSet& k) {
  if (k.count(d.x) || k.count(d.y)) return false;
  std::size_t px = 0, py = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] == d.x) px = i;
    if (order[i] == d.y) py = i;
  }
  if (px > py) std::swap(px, py);
  bool inside = false, outside = false;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!k.count(order[i]) || i == px || i == py) continue;
    (i > px && i < py ? inside : outside) = true;
  }
  return inside && outside;
}

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

int component_of(const std::map<VertexId, VertexSet>& adj, const VertexSet& k, VertexId x, VertexId y) {
  for (const VertexSet& c : induced_components(adj, k)) {
    if (c.count(x)) return c.count(y) ? 1 : 0;
  }
  return 0;
}

Verdict chord_algorithms() {
  Verdict v;
  std::mt19937 rng(404);
  std::size_t families = 0, disconnected = 0;
  for (int trial = 0; families < 1200 && trial < 200000; ++trial) {
    CycleFamily cf;
    if (trial % 2 == 0) {
      cf = gen_random_abab(static_cast<std::uint64_t>(trial) + 1, 4 + trial % 9, 1 + (trial / 2) % 6);
    } else {
      int n = 4 + static_cast<int>(rng() % 9);
      for (int i = 0; i < n; ++i) cf.order.push_back(i);
      int m = 1 + static_cast<int>(rng() % 6);
      for (int i = 0; i < m; ++i) {
        VertexSet s;
        for (int x = 0; x < n; ++x) if (rng() % 3 == 0) s.insert(x);
        if (s.empty()) s.insert(static_cast<VertexId>(rng() % n));
        cf.family.push_back({"S" + std::to_string(i), s});
      }
    }
    bool free = abab_brute(cf);
    v.expect(free == bool(is_abab_free(cf)), "abab test disagrees with brute force");
    if (!free) continue;
    ++families;
    const std::string tag = "family " + std::to_string(trial);

    auto cycle_adj = cycle_with_chords(cf.order, {});
    bool any_split = false;
    for (const Subgraph& s : cf.family) any_split = any_split || !induces_connected(cycle_adj, s.vertices);
    if (any_split) {
      ++disconnected;
      // Brute force: some chord joins two runs of a member and blocks no member.
      bool exists = false;
      for (const Subgraph& s : cf.family)
        for (VertexId x : s.vertices)
          for (VertexId y : s.vertices) {
            if (x >= y || component_of(cycle_adj, s.vertices, x, y)) continue;
            bool clean = true;
            for (const Subgraph& t : cf.family) clean = clean && !brute_blocks(cf.order, {x, y}, t.vertices);
            exists = exists || clean;
          }
      v.expect(exists, tag + ": no non-blocking run-joining chord exists");

      ChordFinding f = find_nonblocking_chord(cf);
      const VertexSet& k0 = cf.family.at(f.member).vertices;
      v.expect(k0.count(f.chord.x) && k0.count(f.chord.y), tag + ": chord endpoints outside its member");
      v.expect(!component_of(cycle_adj, k0, f.chord.x, f.chord.y), tag + ": chord does not join two runs");
      for (const Subgraph& s : cf.family) {
        bool lib = blocks(cf, f.chord, s.vertices), ref = brute_blocks(cf.order, f.chord, s.vertices);
        v.expect(lib == ref, tag + ": blocking test disagrees on " + s.label);
        v.expect(!ref, tag + ": chord blocks " + s.label);
      }
    }
    std::vector<Chord> d = connect_all(cf);
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t j = i + 1; j < d.size(); ++j) v.expect(!chords_cross(cf.order, d[i], d[j]), tag + ": chords cross");
    auto adj = cycle_with_chords(cf.order, d);
    for (const Subgraph& s : cf.family) v.expect(induces_connected(adj, s.vertices), tag + ": " + s.label + " disconnected");
  }
  v.expect(families >= 1000, "only " + std::to_string(families) + " abab-free families");
  v.summary = std::to_string(families) + " abab-free families, " + std::to_string(disconnected) + " needing chords";
  return v;
}

std::vector<Instance> width_instances(int t, int count, int red_percent, std::uint64_t base) {
  std::vector<Instance> out;
  for (int i = 0; i < count; ++i) {
    RandomTwParams p;
    p.width = t;
    p.vertices = 12 + (i * 7) % 19;
    p.members = 4 + i % 9;
    p.max_nodes = 1 + i % 4;
    p.drop_edge_percent = i % 4 == 0 ? 25 : 0;
    p.red_percent = red_percent;
    out.push_back(gen_random_tw_nonpiercing(base + static_cast<std::uint64_t>(i), p));
  }
  return out;
}

Verdict treewidth_upper_bounds() {
  Verdict v;
  std::ostringstream worst;
  for (int t : {2, 3, 4}) {
    int wp = 0, wd = 0;
    for (const Instance& in : width_instances(t, 60, 30, 7000 + 100 * static_cast<std::uint64_t>(t))) {
      const std::string& n = in.system.name;
      v.expect(in.decomposition->width() <= t, n + ": host width above t");
      SupportResult p = primal_tw_support(in.system, *in.decomposition);
      SupportResult d = dual_tw_support(in.system, *in.decomposition);
      for (const SupportResult* r : {&p, &d}) {
        try {
          validate_decomposition(*r->decomposition, r->graph);
        } catch (const SupportError& e) {
          v.expect(false, n + ": certificate invalid: " + e.what());
        }
      }
      v.expect(p.decomposition->width() <= 3 * pow2(t), n + ": primal width above 3*2^t");
      v.expect(d.decomposition->width() <= 4 * pow2(t), n + ": dual width above 4*2^t");
      wp = std::max(wp, p.decomposition->width());
      wd = std::max(wd, d.decomposition->width());
    }
    worst << " t=" << t << ":" << wp << "/" << 3 * pow2(t) << "," << wd << "/" << 4 * pow2(t);
  }
  v.summary = "max primal,dual widths vs bounds" + worst.str();
  return v;
}

Verdict lower_bound_blowup() {
  Verdict v;
  std::ostringstream info;
  for (int n : {3, 4}) {
    Instance p = gen_primal_lb(n);
    Instance d = gen_dual_lb(n);
    v.expect(bool(is_non_piercing(p.system)), "primal lb " + std::to_string(n) + " piercing");
    v.expect(bool(is_non_piercing(d.system)), "dual lb " + std::to_string(n) + " piercing");

    SupportResult pr = primal_tw_support(p.system, *p.decomposition);
    v.expect(contains_grid(pr.graph, p.grid, n), "primal support lacks the grid at N=" + std::to_string(n));
    SupportResult dr = dual_tw_support(d.system, *d.decomposition);
    bool grid = contains_grid(dr.graph, d.grid, n);
    bool induced = contains_grid(dr.graph, d.grid, n, true);
    v.expect(grid, "dual support lacks the grid at N=" + std::to_string(n));
    v.expect(induced, "dual support has no induced grid at N=" + std::to_string(n));

    // Red sides of 2n vertices per direction: 8n (primal) and 4n (dual) bound the host width.
    const int np = static_cast<int>(std::ceil(1.1 * std::log2(double(n)) - 1e-9));
    int nd = 1;
    while (detail::binomial(2 * nd, nd) < static_cast<std::uint64_t>(n)) ++nd;
    v.expect(p.decomposition->width() <= 8 * np, "primal lb host width above 8n at N=" + std::to_string(n));
    v.expect(d.decomposition->width() <= 4 * nd, "dual lb host width above 4n at N=" + std::to_string(n));
    info << " N=" << n << ": log bounds " << 8 * np << "/" << 4 * nd << ", host widths " << p.decomposition->width() << "/" << d.decomposition->width()
         << ", support widths " << pr.decomposition->width() << "/" << dr.decomposition->width()
         << ", dual induced " << (induced ? "yes" : "no");
    if (n == 3) {
      int ep = exact_treewidth_small(p.system.host, 64).width;
      int ed = exact_treewidth_small(d.system.host, 64).width;
      v.expect(ep <= p.decomposition->width(), "primal lb host decomposition below exact width");
      v.expect(ed <= d.decomposition->width(), "dual lb host decomposition below exact width");
      info << ", exact host tw " << ep << "/" << ed;
    }
    info << ';';
  }
  v.summary = info.str();
  return v;
}

Verdict width_ledger() {
  Verdict v;
  std::size_t checked = 0;
  int worst[3] = {0, 0, 0};
  for (int t : {2, 3, 4}) {
    for (int red : {0, 40, 70}) {
      for (const Instance& in : width_instances(t, 40, red, 9000 + 1000 * static_cast<std::uint64_t>(t) + red)) {
        auto [w, td] = detail::completed(in.system, *in.decomposition);
        int tw = td.width();
        TreeDecomposition lifted = bottom_up_augment(w, td);
        TreeDecomposition easy = top_down_augment(w, td, lifted);
        v.expect(lifted.width() <= 2 * pow2(tw), in.system.name + ": bottom-up width above 2*2^t");
        v.expect(easy.width() <= 3 * pow2(tw), in.system.name + ": top-down width above 3*2^t");
        worst[0] = std::max(worst[0], lifted.width() - tw);
        worst[1] = std::max(worst[1], easy.width() - tw);
        auto [reduced, plan] = remove_containments(w);
        PushOut po = push_out(reduced, td);
        for (const auto& [node, bag] : td.bags) {
          int distinct = static_cast<int>(distinct_in_bag(po, bag));
          v.expect(distinct <= 4 * pow2(tw), in.system.name + ": push-out bag holds too many subgraphs");
          worst[2] = std::max(worst[2], distinct);
        }
        ++checked;
      }
    }
  }
  v.summary = std::to_string(checked) + " instances; max growth bottom-up +" + std::to_string(worst[0]) +
              ", top-down +" + std::to_string(worst[1]) + "; max distinct per bag " + std::to_string(worst[2]);
  return v;
}

std::vector<VertexSet> hyperedges_for(const GraphSystem& s, const SupportResult& r) {
  switch (r.kind) {
    case SupportKind::primal: return primal_hyperedges(s);
    case SupportKind::dual: return dual_hyperedges(s, r);
    case SupportKind::intersection: return intersection_hyperedges(s, r);
  }
  return {};
}

bool pairs_force_k4(const std::vector<VertexSet>& hyper) {
  std::set<std::pair<VertexId, VertexId>> forced;
  VertexSet touched;
  for (const VertexSet& e : hyper) {
    if (e.size() != 2) continue;
    forced.insert({*e.begin(), *e.rbegin()});
    touched.insert(e.begin(), e.end());
  }
  std::vector<VertexId> vs(touched.begin(), touched.end());
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = a + 1; b < vs.size(); ++b)
      for (std::size_t c = b + 1; c < vs.size(); ++c)
        for (std::size_t d = c + 1; d < vs.size(); ++d) {
          std::vector<VertexId> q{vs[a], vs[b], vs[c], vs[d]};
          bool all = true;
          for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i + 1; j < 4; ++j) all = all && forced.count({q[i], q[j]});
          if (all) return true;
        }
  return false;
}

Verdict coloring_application() {
  Verdict v;
  int max_used[2] = {0, 0};
  for (const GenusRun& g : genus_runs) {
    auto col = color_support(g.result);
    int genus = euler_genus(g.result.graph);
    int used = colors_used(col);
    v.expect(used <= heawood_bound(genus), g.system.name + ": too many colors");
    v.expect(coloring_is_good(adjacency(g.result.graph), col, hyperedges_for(g.system, g.result)),
             g.system.name + ": bad coloring");
    if (genus <= 1) max_used[genus] = std::max(max_used[genus], used);
  }
  for (const char* kind : {"dual4", "primal4"}) {
    Instance in = gen_stabbed_counterexamples(kind);
    SupportResult r = std::string(kind) == "dual4" ? dual_support(in.system) : primal_support(in.system);
    auto hyper = hyperedges_for(in.system, r);
    // Two-element hyperedges on four subgraphs force K4 in every support, so 4 colors are needed.
    v.expect(pairs_force_k4(hyper), std::string(kind) + ": no forced K4");
    auto col = color_support(r);
    v.expect(colors_used(col) == 4, std::string(kind) + ": greedy did not use exactly 4 colors");
    v.expect(coloring_is_good(adjacency(r.graph), col, hyper), std::string(kind) + ": bad coloring");
  }
  v.summary = std::to_string(genus_runs.size()) + " genus supports; max colors g=0: " + std::to_string(max_used[0]) +
              "/4, g=1: " + std::to_string(max_used[1]) + "/6; counterexamples need 4";
  return v;
}

GraphSystem side_system(const GraphSystem& sys, const VertexSet& side) {
  GraphSystem out;
  for (VertexId x : side) out.host.add_vertex(x);
  for (const auto& [e, ed] : sys.host.edges())
    if (side.count(ed.a) && side.count(ed.b)) out.host.add_edge(ed.a, ed.b);
  for (const Subgraph& h : sys.family_h) {
    VertexSet t = set_intersection(h.vertices, side);
    if (!t.empty()) out.family_h.push_back({h.label, t});
  }
  return out;
}

Verdict structural_fuzzing() {
  Verdict v;
  std::mt19937 rng(909);
  int thm1 = 0, lemma8 = 0, lemma10 = 0, lemma11 = 0;
  for (int trial = 0; thm1 < 500 && trial < 5000; ++trial) {
    GraphSystem s;
    if (trial % 2 == 0) {
      RandomPlanarParams p;
      p.vertices = 8 + trial % 23;
      p.members = 2 + trial % 11;
      s = gen_random_planar_nonpiercing(static_cast<std::uint64_t>(trial) + 50000, p).system;
    } else {
      s = fixtures::random_system(fixtures::planar_grid(3 + trial % 3, 4 + trial % 2), rng, 2 + trial % 8, 6, true);
      if (s.family_h.empty()) continue;
    }
    if (!is_non_piercing(s) || euler_genus(s.host) != 0) continue;
    v.expect(bool(is_cross_free(s)), "planar non-piercing system not cross-free (trial " + std::to_string(trial) + ")");
    ++thm1;
  }
  for (int trial = 0; lemma8 < 500 && trial < 5000; ++trial) {
    const int n = 5 + trial % 12;
    GraphSystem s = fixtures::random_system(fixtures::random_outerplanar(n, rng, trial % 6), rng, 2 + trial % 6, 1 + n / 2, true);
    if (s.family_h.empty()) continue;
    v.expect(bool(is_axax_free(CycleFamily{outer_order(s), s.family_h})),
             "outerplanar non-piercing system not axax-free (trial " + std::to_string(trial) + ")");
    ++lemma8;
  }
  auto proper = [](const VertexSet& x, const VertexSet& y) { return !set_minus(x, y).empty() && !set_minus(y, x).empty(); };
  for (int i = 0; i < 500; ++i) {
    RandomTwParams p;
    p.width = 2 + i % 3;
    p.vertices = 12 + (i * 7) % 19;
    p.members = 4 + i % 9;
    p.max_nodes = 1 + i % 4;
    Instance in = gen_random_tw_nonpiercing(60000 + static_cast<std::uint64_t>(i), p);
    auto [w, td] = detail::completed(in.system, *in.decomposition);
    const Sides sd = sides(td);
    bool split_ok = true;
    for (const auto& [u, a] : sd.adhesion) {
      split_ok = split_ok && is_non_piercing(side_system(w, sd.below.at(u))) && is_non_piercing(side_system(w, sd.above.at(u)));
      const VertexSet& gu = sd.below.at(u);
      const VertexSet& gv = sd.above.at(u);
      for (const Subgraph& h : w.family_h) {
        for (const Subgraph& k : w.family_h) {
          if (&h == &k || !intersects(h.vertices, a) || !intersects(k.vertices, a)) continue;
          VertexSet hu = set_intersection(h.vertices, gu), ku = set_intersection(k.vertices, gu);
          VertexSet ha = set_intersection(h.vertices, a), ka = set_intersection(k.vertices, a);
          VertexSet hv = set_intersection(h.vertices, gv), kv = set_intersection(k.vertices, gv);
          const std::string tag = in.system.name + " " + h.label + "," + k.label;
          if (hu != ku && is_subset(hu, ku) && ha == ka) v.expect(is_subset(kv, hv), tag + ": trace case 1");
          if (proper(hu, ku) && ha == ka) v.expect(hv == kv, tag + ": trace case 2");
          if (proper(hu, ku) && ha != ka && is_subset(ha, ka)) v.expect(is_subset(hv, kv), tag + ": trace case 3");
        }
      }
    }
    v.expect(split_ok, in.system.name + ": adhesion split pierces");
    ++lemma10;
    ++lemma11;
  }
  v.expect(thm1 >= 500 && lemma8 >= 500, "too few instances");
  v.summary = "planar->cross-free " + std::to_string(thm1) + ", outerplanar->axax-free " + std::to_string(lemma8) +
              ", adhesion split " + std::to_string(lemma10) + ", trace cases " + std::to_string(lemma11);
  return v;
}

std::string snapshot() {
  std::ostringstream os;
  auto record = [&](const std::string& tag, const std::function<SupportResult()>& f) {
    os << "== " << tag << '\n';
    try {
      SupportResult r = f();
      os << emit_support(r);
      for (const std::string& t : r.trace) os << "trace " << t << '\n';
    } catch (const SupportError& e) {
      os << "error " << e.what() << '\n';
    }
  };
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    RandomPlanarParams pp;
    pp.members = 3 + static_cast<int>(seed % 8);
    pp.red_percent = 30;
    Instance pl = gen_random_planar_nonpiercing(seed, pp);
    os << emit_system(pl.system);
    record("primal", [&] { return primal_support(pl.system); });
    record("dual", [&] { return dual_support(pl.system); });
    RandomTwParams tp;
    tp.width = 2 + static_cast<int>(seed % 3);
    tp.red_percent = 30;
    Instance tw = gen_random_tw_nonpiercing(seed, tp);
    os << emit_system(tw.system, tw.decomposition);
    record("tw primal", [&] { return primal_tw_support(tw.system, *tw.decomposition); });
    record("tw dual", [&] { return dual_tw_support(tw.system, *tw.decomposition); });
    std::mt19937 rng(static_cast<unsigned>(seed));
    GraphSystem op = fixtures::random_system(fixtures::random_outerplanar(9, rng, 3), rng, 4, 5, true);
    record("outerplanar dual", [&] { return dual_outerplanar(op); });
  }
  return os.str();
}

Verdict determinism() {
  Verdict v;
  std::string a = snapshot();
  std::string b = snapshot();
  v.expect(a == b, "two runs differ");
  v.summary = std::to_string(a.size()) + " bytes of supports, certificates and traces identical across two runs";
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Verdict (*run)();
  };
  const Criterion all[] = {
      {"universal support oracle", universal_oracle},
      {"genus bound", genus_bound},
      {"exact forced supports", forced_supports},
      {"chord algorithms", chord_algorithms},
      {"treewidth upper bounds", treewidth_upper_bounds},
      {"lower-bound blow-up", lower_bound_blowup},
      {"easy-decomposition width ledger", width_ledger},
      {"coloring application", coloring_application},
      {"structural lemma fuzzing", structural_fuzzing},
      {"determinism", determinism},
  };
  int failed = 0;
  int index = 0;
  for (const Criterion& c : all) {
    ++index;
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.failures.push_back(std::string("exception: ") + e.what());
    }
    std::cout << (v.pass ? "PASS" : "FAIL") << "  " << index << ". " << c.name << ": " << v.summary << '\n';
    for (const std::string& f : v.failures) std::cout << "        " << f << '\n';
    std::cout.flush();
    failed += !v.pass;
  }
  std::cout << (10 - failed) << "/10 criteria pass\n";
  return failed == 0 ? 0 : 1;
}
