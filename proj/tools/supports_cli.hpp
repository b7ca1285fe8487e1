#pragma once

// Command-line driver. Exit codes: 0 success, 1 construction or verification failure,
// 2 usage or parse error.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "supports.hpp"

namespace supports::cli {

enum Exit { ok = 0, failure = 1, usage = 2 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Document load(const std::string& path) {
  std::string text = read_file(path);
  try {
    return parse_document(text);
  } catch (const SupportError& e) {
    throw SupportError(ErrorKind::parse, path + ":" + e.what());
  }
}

inline std::string render(const Document& doc, const std::string& format) {
  if (format == "dot") return to_dot(doc);
  if (format == "json") return to_json(doc).dump(2) + "\n";
  return emit_document(doc);
}

inline std::string label_of(const std::vector<Subgraph>& fam, std::size_t i) { return fam.at(i).label; }

inline CycleFamily cycle_family(const GraphSystem& sys, bool k_family) {
  CycleFamily cf;
  cf.order = outer_order(sys);
  cf.family = k_family && sys.family_k ? *sys.family_k : sys.family_h;
  return cf;
}

// Parses `key=value` generator parameters into ints.
inline std::map<std::string, int> key_values(const std::vector<std::string>& params) {
  std::map<std::string, int> out;
  for (const std::string& p : params) {
    auto eq = p.find('=');
    if (eq == std::string::npos) throw UsageError("generator parameter '" + p + "' is not key=value");
    try {
      out[p.substr(0, eq)] = std::stoi(p.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("generator parameter '" + p + "' needs an integer value");
    }
  }
  return out;
}

inline int take(std::map<std::string, int>& kv, const std::string& key, int fallback) {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  int v = it->second;
  kv.erase(it);
  return v;
}

inline Instance generate(const std::string& name, const std::vector<std::string>& params, std::uint64_t seed) {
  std::vector<std::string> rest = params;
  std::string word;
  if ((name == "star" || name == "stabbed") && !rest.empty() && rest.front().find('=') == std::string::npos) {
    word = rest.front();
    rest.erase(rest.begin());
  }
  auto kv = key_values(rest);
  Instance in;
  if (name == "torus-grid") {
    in = gen_torus_grid(take(kv, "n", 4));
  } else if (name == "asteroidal") {
    in = gen_asteroidal();
  } else if (name == "star") {
    in = gen_star_gadgets(word.empty() ? "triangle" : word, take(kv, "n", 4));
  } else if (name == "primal-lb") {
    in = gen_primal_lb(take(kv, "N", 3));
  } else if (name == "dual-lb") {
    in = gen_dual_lb(take(kv, "N", 3));
  } else if (name == "stabbed") {
    in = gen_stabbed_counterexamples(word.empty() ? "dual4" : word);
  } else if (name == "random-planar") {
    RandomPlanarParams p;
    p.vertices = take(kv, "vertices", p.vertices);
    p.members = take(kv, "members", p.members);
    p.max_member_size = take(kv, "max_member_size", p.max_member_size);
    p.red_percent = take(kv, "red_percent", p.red_percent);
    in = gen_random_planar_nonpiercing(seed, p);
  } else if (name == "random-tw") {
    RandomTwParams p;
    p.width = take(kv, "width", p.width);
    p.vertices = take(kv, "vertices", p.vertices);
    p.members = take(kv, "members", p.members);
    p.max_nodes = take(kv, "max_nodes", p.max_nodes);
    p.drop_edge_percent = take(kv, "drop_edge_percent", p.drop_edge_percent);
    p.red_percent = take(kv, "red_percent", p.red_percent);
    in = gen_random_tw_nonpiercing(seed, p);
  } else if (name == "random-abab") {
    CycleFamily cf = gen_random_abab(seed, take(kv, "n", 8), take(kv, "m", 4));
    in.system.name = "abab";
    in.system.host = circle_embedding(cf.order, {});
    in.system.embedded = true;
    in.system.family_h = cf.family;
    in.system.family_k = cf.family;
  } else {
    throw UsageError("unknown generator '" + name + "'");
  }
  if (!kv.empty()) throw UsageError("unknown parameter '" + kv.begin()->first + "' for " + name);
  return in;
}

struct Options {
  std::optional<std::size_t> cap;
  std::string trace_path;
  std::string format = "native";
};

inline void write_trace(const Options& o, const std::vector<std::string>& trace) {
  if (o.trace_path.empty()) return;
  std::ofstream f(o.trace_path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + o.trace_path);
  for (const std::string& t : trace) f << t << '\n';
}

inline int run_check(const std::vector<std::string>& files, const std::string& what, std::ostream& out) {
  int code = ok;
  for (const std::string& path : files) {
    Document doc = load(path);
    const GraphSystem& sys = doc.system;
    std::ostringstream msg;
    bool holds = true;
    if (what == "cross-free") {
      auto r = is_cross_free(sys);
      holds = r.holds;
      if (!holds) {
        const auto& w = *r.witness;
        const auto& fam = w.k_family ? *sys.family_k : sys.family_h;
        msg << "witness: " << label_of(fam, w.first) << " " << label_of(fam, w.second) << " cross at vertex "
            << w.vertex << " darts";
        for (DartId d : w.darts) msg << ' ' << d;
      }
    } else if (what == "non-piercing") {
      auto r = is_non_piercing(sys);
      holds = r.holds;
      if (!holds) {
        const auto& w = *r.witness;
        const auto& fam = w.k_family ? *sys.family_k : sys.family_h;
        if (w.first == w.second) {
          msg << "witness: " << label_of(fam, w.first) << " is disconnected";
        } else {
          msg << "witness: " << label_of(fam, w.first) << " minus " << label_of(fam, w.second)
              << " is disconnected";
        }
      }
    } else if (what == "abab" || what == "axax") {
      CycleFamily cf = cycle_family(sys, what == "abab");
      auto r = what == "abab" ? is_abab_free(cf) : is_axax_free(cf);
      holds = r.holds;
      if (!holds) {
        const auto& w = *r.witness;
        msg << "witness: " << cf.family[w.first].label << " " << cf.family[w.second].label << " at";
        for (VertexId v : w.vertices) msg << ' ' << v;
      }
    } else {
      if (!doc.decomposition) throw UsageError(path + ": no tree decomposition (tdnode/bag lines)");
      try {
        validate_decomposition(*doc.decomposition, sys.host);
        msg << "width " << doc.decomposition->width();
      } catch (const SupportError& e) {
        holds = false;
        msg << "witness: " << e.what();
      }
    }
    out << path << ": " << what << (holds ? " holds" : " fails");
    if (!msg.str().empty()) out << " (" << msg.str() << ")";
    out << '\n';
    if (!holds) code = failure;
  }
  return code;
}

inline SupportResult construct(const std::string& kind, const std::string& mode, const Document& doc,
                               const BuildOptions& opt) {
  const GraphSystem& sys = doc.system;
  if (mode == "genus") {
    if (kind == "primal") return primal_support(sys, opt);
    if (kind == "dual") return dual_support(sys, opt);
    return intersection_support(sys, opt);
  }
  if (kind == "intersection") throw UsageError("intersection supports exist only in genus mode");
  if (mode == "outerplanar") return kind == "primal" ? primal_outerplanar(sys, opt) : dual_outerplanar(sys, opt);
  if (!doc.decomposition) throw UsageError("treewidth mode needs a tree decomposition (tdnode/bag lines)");
  return kind == "primal" ? primal_tw_support(sys, *doc.decomposition, opt)
                          : dual_tw_support(sys, *doc.decomposition, opt);
}

// Support connectivity plus the certificate: genus no larger than the host's, or a valid tree
// decomposition of the support.
inline bool check_support(const GraphSystem& sys, const SupportResult& res, std::ostream& out) {
  SupportCheck c = verify_support(sys, res);
  if (!c) {
    out << "not a support: hyperedge " << *c.hyperedge << " splits into " << c.components.size()
        << " components\n";
    return false;
  }
  if (res.has_rotation && sys.embedded && !check_genus_certificate(res, euler_genus(sys.host))) {
    out << "certificate genus " << euler_genus(res.graph) << " exceeds host genus " << euler_genus(sys.host)
        << '\n';
    return false;
  }
  if (res.decomposition) {
    try {
      validate_decomposition(*res.decomposition, res.graph);
    } catch (const SupportError& e) {
      out << "certificate is not a tree decomposition: " << e.what() << '\n';
      return false;
    }
  }
  return true;
}

inline int run_build(const std::string& kind, const std::string& mode, const std::string& file, const Options& o,
                     std::ostream& out, std::ostream& err) {
  Document doc = load(file);
  BuildOptions opt;
  opt.cap = o.cap;
  SupportResult res;
  try {
    res = construct(kind, mode, doc, opt);
  } catch (const SupportError& e) {
    if (e.kind() == ErrorKind::parse) throw;
    write_trace(o, e.trace());
    err << "build failed: " << e.what() << '\n';
    return failure;
  }
  write_trace(o, res.trace);
  out << render(support_document(res, doc.system.name + "_" + kind), o.format);
  std::ostringstream why;
  if (!check_support(doc.system, res, why)) {
    err << "verification failed: " << why.str();
    return failure;
  }
  return ok;
}

inline int run_verify(const std::string& support_file, const std::string& system_file, std::ostream& out) {
  Document sd = load(support_file);
  Document sys = load(system_file);
  SupportResult res = to_support(sd);
  std::ostringstream why;
  try {
    if (!check_support(sys.system, res, why)) {
      out << "fail: " << why.str();
      return failure;
    }
  } catch (const SupportError& e) {
    out << "fail: " << e.what() << '\n';
    return failure;
  }
  out << "ok: " << to_string(res.kind) << " support with " << res.graph.vertex_count() << " vertices and "
      << res.graph.edge_count() << " edges\n";
  return ok;
}

inline int run_color(const std::string& file, const std::string& against, std::ostream& out) {
  Document doc = load(file);
  SupportResult res = to_support(doc);
  auto col = color_support(res);
  std::vector<VertexSet> hyper;
  if (!against.empty()) {
    GraphSystem sys = load(against).system;
    if (res.kind == SupportKind::primal) hyper = primal_hyperedges(sys);
    if (res.kind == SupportKind::dual) hyper = dual_hyperedges(sys, res);
    if (res.kind == SupportKind::intersection) hyper = intersection_hyperedges(sys, res);
  }
  for (const auto& [v, c] : col) out << "color " << v << ' ' << c << '\n';
  int used = colors_used(col);
  out << "colors " << used;
  bool good = coloring_is_good(adjacency(res.graph), col, hyper);
  if (res.has_rotation) {
    int bound = heawood_bound(euler_genus(res.graph));
    out << " bound " << bound;
    good = good && used <= bound;
  } else if (res.decomposition) {
    int bound = res.decomposition->width() + 1;
    out << " bound " << bound;
    good = good && used <= bound;
  }
  out << (good ? " ok" : " FAIL") << '\n';
  return good ? ok : failure;
}

inline int run_stats(const std::vector<std::string>& files, std::ostream& out) {
  for (const std::string& path : files) {
    Document doc = load(path);
    const GraphSystem& sys = doc.system;
    out << path << ": graph " << sys.name << " vertices " << sys.host.vertex_count() << " edges "
        << sys.host.edge_count();
    if (sys.embedded) out << " genus " << euler_genus(sys.host);
    out << " H " << sys.family_h.size();
    if (sys.family_k) out << " K " << sys.family_k->size();
    std::size_t deepest = 0;
    for (VertexId v : sys.host.vertices()) deepest = std::max(deepest, members_at(sys.family_h, v).size());
    out << " depth " << deepest;
    if (!doc.support) {
      out << " non_piercing " << (is_non_piercing(sys) ? "yes" : "no");
      if (sys.embedded) out << " cross_free " << (is_cross_free(sys) ? "yes" : "no");
    } else {
      out << " support " << to_string(*doc.support);
    }
    if (doc.decomposition) out << " width " << doc.decomposition->width();
    out << '\n';
  }
  return ok;
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Construct and check supports of graph systems"};
  app.require_subcommand(1);
  Options o;
  std::size_t cap = 0;
  app.add_option("--cap", cap, "Iteration cap (elementary operations)");
  app.add_option("--trace", o.trace_path, "Write the construction trace to this path");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"native", "dot", "json"}));

  std::vector<std::string> files;
  auto* check = app.add_subcommand("check", "Check a property of graph systems");
  auto* check_group = check->add_option_group("property");
  bool cross = false, pierce = false, abab = false, axax = false, td = false;
  check_group->add_flag("--cross-free", cross);
  check_group->add_flag("--non-piercing", pierce);
  check_group->add_flag("--abab", abab);
  check_group->add_flag("--axax", axax);
  check_group->add_flag("--td", td);
  check_group->require_option(1);
  check->add_option("files", files, "System files")->required();

  std::string kind, mode = "genus", file;
  auto* build = app.add_subcommand("build", "Construct a support");
  build->add_option("kind", kind)->required()->check(CLI::IsMember({"primal", "dual", "intersection"}));
  build->add_option("file", file, "System file")->required();
  build->add_option("--mode", mode)->check(CLI::IsMember({"genus", "outerplanar", "treewidth"}));

  std::string against;
  auto* verify = app.add_subcommand("verify", "Verify a support against its system");
  verify->add_option("support", file, "Support file")->required();
  verify->add_option("--against", against, "System file")->required();

  std::string gen_name;
  std::vector<std::string> gen_params;
  std::uint64_t seed = 1;
  auto* gen = app.add_subcommand("gen", "Emit a generated system");
  gen->add_option("generator", gen_name,
                  "torus-grid | asteroidal | star | primal-lb | dual-lb | stabbed | random-planar | random-tw | "
                  "random-abab")
      ->required();
  gen->add_option("params", gen_params, "key=value parameters");
  gen->add_option("--seed", seed);

  auto* color = app.add_subcommand("color", "Color a support");
  color->add_option("support", file, "Support file")->required();
  color->add_option("--against", against, "System file for the hyperedge check");

  auto* stats = app.add_subcommand("stats", "Summarize files");
  stats->add_option("files", files)->required();

  auto* dot = app.add_subcommand("export-dot", "Write a file as DOT");
  dot->add_option("file", file)->required();

  for (CLI::App* sub : {check, build, verify, gen, color, stats, dot}) sub->fallthrough();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return usage;
  }
  if (cap > 0) o.cap = cap;

  try {
    if (*check) {
      std::string what = cross ? "cross-free" : pierce ? "non-piercing" : abab ? "abab" : axax ? "axax" : "td";
      return run_check(files, what, out);
    }
    if (*build) return run_build(kind, mode, file, o, out, err);
    if (*verify) return run_verify(file, against, out);
    if (*gen) {
      Instance in = generate(gen_name, gen_params, seed);
      Document doc;
      doc.system = in.system;
      doc.decomposition = in.decomposition;
      out << render(doc, o.format);
      return ok;
    }
    if (*color) return run_color(file, against, out);
    if (*stats) return run_stats(files, out);
    if (*dot) {
      out << to_dot(load(file));
      return ok;
    }
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return usage;
  } catch (const SupportError& e) {
    err << e.what() << '\n';
    return e.kind() == ErrorKind::parse ? usage : failure;
  }
  return usage;
}

}  // namespace supports::cli
