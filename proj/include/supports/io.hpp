#pragma once

// Line-oriented native format for graph systems, tree decompositions and supports, plus DOT
// and JSON exports.
//
//   graph <name>
//   vertex <id> [color r|b]
//   edge <eid> <u> <v>
//   rotation <vid>: <eid> ...        clockwise; a loop lists its edge twice
//   outerface: <eid> ...
//   subgraph H|K <label>: <vid> ...
//   tdnode <nid> [root]
//   tdedge <nid> <nid>
//   bag <nid>: <vid> ...
//   support primal|dual|intersection
//   label <vid> <label>
//
// `support` and `label` mark a file as a support: the graph is the support graph and labels
// name the subgraph behind each dual or intersection vertex.

#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "supports/graph_system.hpp"
#include "supports/rotation_graph.hpp"
#include "supports/support_result.hpp"
#include "supports/tree_decomposition.hpp"

namespace supports {

struct Document {
  GraphSystem system;
  std::optional<TreeDecomposition> decomposition;
  std::optional<SupportKind> support;
  std::map<VertexId, std::string> labels;

  friend bool operator==(const Document& x, const Document& y) {
    const GraphSystem &a = x.system, &b = y.system;
    return a.name == b.name && a.host == b.host && a.embedded == b.embedded &&
           a.outer_face == b.outer_face && a.family_h == b.family_h && a.family_k == b.family_k &&
           a.coloring == b.coloring && x.decomposition == y.decomposition && x.support == y.support &&
           x.labels == y.labels;
  }
};

namespace detail {

struct Token {
  std::string text;
  int col = 1;
};

// Whitespace-separated tokens; ':' always stands alone.
inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    if (line[i] == ':') {
      out.push_back({":", static_cast<int>(i) + 1});
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != ':') ++j;
    out.push_back({std::string(line.substr(i, j - i)), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

class LineParser {
 public:
  LineParser(int line, std::vector<Token> toks, int width)
      : line_(line), toks_(std::move(toks)), width_(width) {}

  [[noreturn]] void fail(const std::string& msg, int col) const {
    throw SupportError(ErrorKind::parse, std::to_string(line_) + ":" + std::to_string(col) + ": " + msg);
  }
  [[noreturn]] void fail(const std::string& msg) const { fail(msg, col()); }

  int col() const { return at_end() ? width_ + 1 : toks_[pos_].col; }
  bool at_end() const { return pos_ >= toks_.size(); }
  const std::string& peek() const { return toks_[pos_].text; }

  std::string word(const char* what) {
    if (at_end()) fail(std::string("expected ") + what);
    return toks_[pos_++].text;
  }

  int integer(const char* what) {
    if (at_end()) fail(std::string("expected ") + what);
    const Token& t = toks_[pos_];
    int v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || p != t.text.data() + t.text.size()) {
      fail(std::string("expected ") + what + ", got '" + t.text + "'", t.col);
    }
    ++pos_;
    return v;
  }

  void colon() {
    if (at_end() || peek() != ":") fail("expected ':'");
    ++pos_;
  }

  std::vector<std::pair<int, int>> integers(const char* what) {
    std::vector<std::pair<int, int>> out;
    while (!at_end()) {
      int c = col();
      out.push_back({integer(what), c});
    }
    return out;
  }

  void done() {
    if (!at_end()) fail("unexpected '" + peek() + "'");
  }

  int line() const { return line_; }

 private:
  int line_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int width_;
};

struct Located {
  int line = 0;
  int col = 0;
};

[[noreturn]] inline void fail_at(Located at, const std::string& msg) {
  throw SupportError(ErrorKind::parse, std::to_string(at.line) + ":" + std::to_string(at.col) + ": " + msg);
}

}  // namespace detail

inline Document parse_document(std::string_view text) {
  using detail::Located;
  Document doc;
  GraphSystem& sys = doc.system;
  std::map<VertexId, std::optional<Color>> colors;
  std::map<VertexId, std::pair<std::vector<std::pair<int, int>>, Located>> rotations;
  std::map<NodeId, Located> td_nodes;
  std::vector<std::pair<std::pair<NodeId, NodeId>, Located>> td_edges;
  std::map<NodeId, std::pair<VertexSet, Located>> bags;
  std::optional<NodeId> root;
  std::vector<Subgraph> fam_k;
  bool saw_k = false;
  std::set<std::pair<char, std::string>> seen_labels;

  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string_view sv = raw;
    if (auto hash = sv.find('#'); hash != std::string_view::npos) sv = sv.substr(0, hash);
    auto toks = detail::tokenize(sv);
    if (toks.empty()) continue;
    detail::LineParser p(lineno, toks, static_cast<int>(sv.size()));
    int kw_col = p.col();
    std::string kw = p.word("keyword");
    Located here{lineno, kw_col};

    if (kw == "graph") {
      sys.name = p.word("graph name");
      p.done();
    } else if (kw == "vertex") {
      int c = p.col();
      VertexId v = p.integer("vertex id");
      if (colors.count(v)) p.fail("duplicate vertex " + std::to_string(v), c);
      std::optional<Color> color;
      if (!p.at_end()) {
        if (p.word("'color'") != "color") p.fail("expected 'color'", c);
        int cc = p.col();
        std::string w = p.word("r or b");
        if (w == "r") {
          color = Color::red;
        } else if (w == "b") {
          color = Color::blue;
        } else {
          p.fail("color must be r or b", cc);
        }
      }
      p.done();
      colors[v] = color;
      sys.host.add_vertex(v);
    } else if (kw == "edge") {
      int c = p.col();
      EdgeId e = p.integer("edge id");
      int uc = p.col();
      VertexId u = p.integer("vertex id");
      int vc = p.col();
      VertexId v = p.integer("vertex id");
      p.done();
      if (e < 0 || sys.host.has_edge(e)) p.fail("duplicate or negative edge id " + std::to_string(e), c);
      if (!sys.host.has_vertex(u)) p.fail("unknown vertex " + std::to_string(u), uc);
      if (!sys.host.has_vertex(v)) p.fail("unknown vertex " + std::to_string(v), vc);
      sys.host.add_edge_with_id(e, u, v);
    } else if (kw == "rotation") {
      int c = p.col();
      VertexId v = p.integer("vertex id");
      p.colon();
      if (!sys.host.has_vertex(v)) p.fail("rotation for unknown vertex " + std::to_string(v), c);
      if (rotations.count(v)) p.fail("second rotation for vertex " + std::to_string(v), c);
      rotations[v] = {p.integers("edge id"), here};
    } else if (kw == "outerface") {
      p.colon();
      for (auto [e, c] : p.integers("edge id")) {
        if (!sys.host.has_edge(e)) p.fail("unknown edge " + std::to_string(e), c);
        sys.outer_face.push_back(e);
      }
    } else if (kw == "subgraph") {
      int fc = p.col();
      std::string fam = p.word("H or K");
      if (fam != "H" && fam != "K") p.fail("family must be H or K", fc);
      int lc = p.col();
      Subgraph s{p.word("label"), {}};
      if (s.label == ":") p.fail("expected label", lc);
      if (!seen_labels.insert({fam[0], s.label}).second) p.fail("duplicate label " + s.label, lc);
      p.colon();
      for (auto [v, c] : p.integers("vertex id")) {
        if (!sys.host.has_vertex(v)) p.fail("unknown vertex " + std::to_string(v), c);
        s.vertices.insert(v);
      }
      if (fam == "H") {
        sys.family_h.push_back(std::move(s));
      } else {
        saw_k = true;
        fam_k.push_back(std::move(s));
      }
    } else if (kw == "tdnode") {
      int c = p.col();
      NodeId n = p.integer("node id");
      if (td_nodes.count(n)) p.fail("duplicate node " + std::to_string(n), c);
      if (!p.at_end()) {
        int rc = p.col();
        if (p.word("'root'") != "root") p.fail("expected 'root'", rc);
        if (root) p.fail("second root", rc);
        root = n;
      }
      p.done();
      td_nodes[n] = {lineno, c};
    } else if (kw == "tdedge") {
      int c = p.col();
      NodeId a = p.integer("node id");
      NodeId b = p.integer("node id");
      p.done();
      td_edges.push_back({{a, b}, {lineno, c}});
    } else if (kw == "bag") {
      int c = p.col();
      NodeId n = p.integer("node id");
      p.colon();
      if (bags.count(n)) p.fail("second bag for node " + std::to_string(n), c);
      VertexSet b;
      for (auto [v, vc] : p.integers("vertex id")) b.insert(v);
      bags[n] = {std::move(b), {lineno, c}};
    } else if (kw == "support") {
      int c = p.col();
      std::string k = p.word("support kind");
      p.done();
      if (k == "primal") {
        doc.support = SupportKind::primal;
      } else if (k == "dual") {
        doc.support = SupportKind::dual;
      } else if (k == "intersection") {
        doc.support = SupportKind::intersection;
      } else {
        p.fail("unknown support kind " + k, c);
      }
    } else if (kw == "label") {
      int c = p.col();
      VertexId v = p.integer("vertex id");
      std::string l = p.word("label");
      p.done();
      if (!sys.host.has_vertex(v)) p.fail("label for unknown vertex " + std::to_string(v), c);
      doc.labels[v] = l;
    } else {
      p.fail("unknown keyword '" + kw + "'", kw_col);
    }
  }

  bool any_color = false;
  for (const auto& [v, c] : colors) any_color = any_color || c.has_value();
  if (any_color) {
    for (const auto& [v, c] : colors) sys.coloring[v] = c.value_or(Color::blue);
  }

  sys.embedded = !rotations.empty();
  if (sys.embedded) {
    for (VertexId v : sys.host.vertices()) {
      std::size_t deg = sys.host.degree(v);
      auto it = rotations.find(v);
      if (it == rotations.end()) {
        if (deg == 0) continue;
        detail::fail_at({lineno, 1}, "vertex " + std::to_string(v) + " has edges but no rotation");
      }
      const auto& [list, at] = it->second;
      std::vector<DartId> darts;
      std::map<EdgeId, int> uses;
      for (auto [e, c] : list) {
        Located loc{at.line, c};
        if (!sys.host.has_edge(e)) detail::fail_at(loc, "unknown edge " + std::to_string(e));
        const Edge& ed = sys.host.edge(e);
        int n = uses[e]++;
        if (ed.is_loop() && ed.a == v && n < 2) {
          darts.push_back(make_dart(e, n));
        } else if (!ed.is_loop() && n == 0 && (ed.a == v || ed.b == v)) {
          darts.push_back(make_dart(e, ed.a == v ? 0 : 1));
        } else {
          detail::fail_at(loc, "edge " + std::to_string(e) + " is not incident to vertex " + std::to_string(v) +
                                   (n > 0 ? " that many times" : ""));
        }
      }
      if (darts.size() != deg) {
        detail::fail_at(at, "rotation of vertex " + std::to_string(v) + " lists " + std::to_string(darts.size()) +
                                " edge ends, degree is " + std::to_string(deg));
      }
      sys.host.set_rotation(v, std::move(darts));
    }
    sys.host.canonicalize();
  }
  if (saw_k) sys.family_k = std::move(fam_k);

  if (!td_nodes.empty() || !bags.empty() || !td_edges.empty()) {
    TreeDecomposition td;
    for (const auto& [n, b] : bags) {
      if (!td_nodes.count(n)) detail::fail_at(b.second, "bag for undeclared node " + std::to_string(n));
    }
    for (const auto& [n, at] : td_nodes) td.bags[n] = bags.count(n) ? bags.at(n).first : VertexSet{};
    std::map<NodeId, std::vector<NodeId>> nb;
    for (const auto& [ab, at] : td_edges) {
      for (NodeId x : {ab.first, ab.second}) {
        if (!td_nodes.count(x)) detail::fail_at(at, "edge to undeclared node " + std::to_string(x));
      }
      nb[ab.first].push_back(ab.second);
      nb[ab.second].push_back(ab.first);
    }
    td.root = root.value_or(td_nodes.begin()->first);
    std::set<NodeId> seen{td.root};
    std::vector<NodeId> stack{td.root};
    while (!stack.empty()) {
      NodeId x = stack.back();
      stack.pop_back();
      for (NodeId y : nb[x]) {
        if (y == x || seen.count(y)) continue;
        seen.insert(y);
        td.parent[y] = x;
        stack.push_back(y);
      }
    }
    if (td_edges.size() + 1 != td_nodes.size() || seen.size() != td_nodes.size()) {
      detail::fail_at(td_edges.empty() ? td_nodes.begin()->second : td_edges.back().second,
                      "tree decomposition edges do not form a tree");
    }
    doc.decomposition = std::move(td);
  }
  return doc;
}

inline GraphSystem parse_system(std::string_view text) { return parse_document(text).system; }

namespace detail {

inline void emit_graph(std::ostream& os, const GraphSystem& sys) {
  os << "graph " << sys.name << '\n';
  for (VertexId v : sys.host.vertices()) {
    os << "vertex " << v;
    if (sys.colored()) os << " color " << (sys.is_blue(v) ? 'b' : 'r');
    os << '\n';
  }
  for (const auto& [e, ed] : sys.host.edges()) os << "edge " << e << ' ' << ed.a << ' ' << ed.b << '\n';
  if (sys.embedded) {
    for (const auto& [v, r] : sys.host.rotations()) {
      if (r.empty()) continue;
      os << "rotation " << v << ':';
      for (DartId d : r) os << ' ' << dart_edge(d);
      os << '\n';
    }
  }
  if (!sys.outer_face.empty()) {
    os << "outerface:";
    for (EdgeId e : sys.outer_face) os << ' ' << e;
    os << '\n';
  }
  auto family = [&](char f, const std::vector<Subgraph>& fam) {
    for (const Subgraph& s : fam) {
      os << "subgraph " << f << ' ' << s.label << ':';
      for (VertexId v : s.vertices) os << ' ' << v;
      os << '\n';
    }
  };
  family('H', sys.family_h);
  if (sys.family_k) family('K', *sys.family_k);
}

}  // namespace detail

inline std::string emit_decomposition(const TreeDecomposition& td) {
  std::ostringstream os;
  for (const auto& [n, b] : td.bags) os << "tdnode " << n << (n == td.root ? " root" : "") << '\n';
  for (const auto& [c, p] : td.parent) os << "tdedge " << p << ' ' << c << '\n';
  for (const auto& [n, b] : td.bags) {
    os << "bag " << n << ':';
    for (VertexId v : b) os << ' ' << v;
    os << '\n';
  }
  return os.str();
}

inline std::string emit_document(const Document& doc) {
  std::ostringstream os;
  if (doc.support) os << "support " << to_string(*doc.support) << '\n';
  detail::emit_graph(os, doc.system);
  for (const auto& [v, l] : doc.labels) os << "label " << v << ' ' << l << '\n';
  if (doc.decomposition) os << emit_decomposition(*doc.decomposition);
  return os.str();
}

inline std::string emit_system(const GraphSystem& sys, const std::optional<TreeDecomposition>& td = std::nullopt) {
  Document doc;
  doc.system = sys;
  doc.decomposition = td;
  return emit_document(doc);
}

// Loops are re-oriented so the first listed end is dart side 0; everything else is unchanged.
inline Document normalize(const Document& doc) { return parse_document(emit_document(doc)); }

inline Document support_document(const SupportResult& res, const std::string& name = "support") {
  Document doc;
  doc.support = res.kind;
  doc.system.name = name;
  doc.system.host = res.graph;
  doc.system.embedded = res.has_rotation;
  doc.labels = res.labels;
  doc.decomposition = res.decomposition;
  return doc;
}

inline std::string emit_support(const SupportResult& res, const std::string& name = "support") {
  return emit_document(support_document(res, name));
}

inline SupportResult to_support(const Document& doc) {
  if (!doc.support) throw SupportError(ErrorKind::parse, "1:1: not a support file (missing 'support' line)");
  SupportResult r;
  r.kind = *doc.support;
  r.graph = doc.system.host;
  r.has_rotation = doc.system.embedded;
  r.labels = doc.labels;
  r.decomposition = doc.decomposition;
  return r;
}

inline SupportResult parse_support(std::string_view text) { return to_support(parse_document(text)); }

inline nlohmann::ordered_json to_json(const Document& doc) {
  using nlohmann::ordered_json;
  const GraphSystem& sys = doc.system;
  ordered_json j;
  if (doc.support) j["support"] = to_string(*doc.support);
  j["graph"] = sys.name;
  j["vertices"] = ordered_json::array();
  for (VertexId v : sys.host.vertices()) {
    ordered_json x{{"id", v}};
    if (sys.colored()) x["color"] = sys.is_blue(v) ? "b" : "r";
    j["vertices"].push_back(x);
  }
  j["edges"] = ordered_json::array();
  for (const auto& [e, ed] : sys.host.edges()) j["edges"].push_back({{"id", e}, {"u", ed.a}, {"v", ed.b}});
  if (sys.embedded) {
    ordered_json rot = ordered_json::object();
    for (const auto& [v, r] : sys.host.rotations()) {
      if (r.empty()) continue;
      ordered_json list = ordered_json::array();
      for (DartId d : r) list.push_back(dart_edge(d));
      rot[std::to_string(v)] = list;
    }
    j["rotation"] = rot;
  }
  if (!sys.outer_face.empty()) j["outerface"] = sys.outer_face;
  auto family = [](const std::vector<Subgraph>& fam) {
    ordered_json arr = ordered_json::array();
    for (const Subgraph& s : fam) arr.push_back({{"label", s.label}, {"vertices", s.vertices}});
    return arr;
  };
  j["subgraphs"] = {{"H", family(sys.family_h)}};
  if (sys.family_k) j["subgraphs"]["K"] = family(*sys.family_k);
  if (!doc.labels.empty()) {
    ordered_json l = ordered_json::object();
    for (const auto& [v, s] : doc.labels) l[std::to_string(v)] = s;
    j["labels"] = l;
  }
  if (doc.decomposition) {
    const TreeDecomposition& td = *doc.decomposition;
    ordered_json nodes = ordered_json::array();
    for (const auto& [n, b] : td.bags) {
      ordered_json x{{"id", n}, {"bag", b}};
      if (auto it = td.parent.find(n); it != td.parent.end()) x["parent"] = it->second;
      nodes.push_back(x);
    }
    j["decomposition"] = {{"root", td.root}, {"nodes", nodes}};
  }
  return j;
}

inline std::string to_dot(const Document& doc) {
  const GraphSystem& sys = doc.system;
  std::ostringstream os;
  os << "graph \"" << sys.name << "\" {\n";
  for (VertexId v : sys.host.vertices()) {
    os << "  " << v;
    std::vector<std::string> attrs;
    if (auto it = doc.labels.find(v); it != doc.labels.end()) attrs.push_back("label=\"" + it->second + "\"");
    if (sys.colored()) attrs.push_back(sys.is_blue(v) ? "color=blue" : "color=red");
    if (!attrs.empty()) {
      os << " [";
      for (std::size_t i = 0; i < attrs.size(); ++i) os << (i ? ", " : "") << attrs[i];
      os << ']';
    }
    os << ";\n";
  }
  for (const auto& [e, ed] : sys.host.edges()) os << "  " << ed.a << " -- " << ed.b << " [id=e" << e << "];\n";
  os << "}\n";
  return os.str();
}

}  // namespace supports
