#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "sigsym/chaingroup.hpp"
#include "sigsym/deltamatroid.hpp"
#include "sigsym/error.hpp"
#include "sigsym/field.hpp"
#include "sigsym/graphs.hpp"
#include "sigsym/matrix.hpp"
#include "sigsym/width.hpp"

namespace sigsym {

using Json = nlohmann::json;

namespace detail {

struct Line {
  std::size_t number = 0;
  std::vector<std::string> tokens;
};

/// Non-empty lines split on whitespace, with `#` comments removed.
inline std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream words(raw);
    Line line{number, {}};
    for (std::string w; words >> w;) line.tokens.push_back(w);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

[[noreturn]] inline void parse_fail(const Line& line, const std::string& what) {
  fail(ErrorKind::ParseError, "line " + std::to_string(line.number) + ": " + what);
}

inline int to_int(const Line& line, const std::string& tok) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used == tok.size()) return v;
  } catch (const std::exception&) {
  }
  parse_fail(line, "expected an integer, got '" + tok + "'");
}

inline void expect_keyword(const Line& line, std::string_view word, std::size_t min_tokens) {
  if (line.tokens.front() != word) parse_fail(line, "expected '" + std::string(word) + "'");
  if (line.tokens.size() < min_tokens) parse_fail(line, "too few fields after '" + std::string(word) + "'");
}

inline Elem parse_elem(const Field& f, const Line& line, const std::string& tok) {
  try {
    return f.parse(tok);
  } catch (const Error& e) {
    parse_fail(line, e.what());
  }
}

}  // namespace detail

/// `field p k c0 ... ck`; `field p k` and `field p` use the canonical modulus.
inline Field parse_field_tokens(const std::vector<std::string>& tokens, std::size_t line_number = 0) {
  const detail::Line line{line_number, tokens};
  detail::expect_keyword(line, "field", 2);
  const int p = detail::to_int(line, tokens[1]);
  const int k = tokens.size() > 2 ? detail::to_int(line, tokens[2]) : 1;
  if (tokens.size() <= 3) return Field::canonical(p, k);
  std::vector<int> modulus;
  for (std::size_t i = 3; i < tokens.size(); ++i) modulus.push_back(detail::to_int(line, tokens[i]));
  return Field::make(p, k, std::move(modulus));
}

/// `sigma j s` with s in element text syntax.
inline SesquiMorphism parse_sigma_tokens(const Field& f, const std::vector<std::string>& tokens,
                                         std::size_t line_number = 0) {
  const detail::Line line{line_number, tokens};
  detail::expect_keyword(line, "sigma", 3);
  if (tokens.size() != 3) detail::parse_fail(line, "sigma takes exactly two fields");
  return SesquiMorphism::make(f, detail::to_int(line, tokens[1]), detail::parse_elem(f, line, tokens[2]));
}

inline std::string field_line(const Field& f) {
  std::string s = "field " + std::to_string(f.characteristic()) + " " + std::to_string(f.degree());
  for (int c : f.modulus()) s += " " + std::to_string(c);
  return s;
}

inline std::string sigma_line(const SesquiMorphism& s) {
  return "sigma " + std::to_string(s.frobenius_power()) + " " + s.field().format(s.unit());
}

inline std::string labels_line(const std::vector<std::string>& labels) {
  std::string s = "labels";
  for (const auto& l : labels) s += " " + l;
  return s;
}

struct MatrixInput {
  LabeledMatrix matrix;
  std::optional<SesquiMorphism> sigma;
};

/// Header lines `field`, optional `sigma`, `labels`, then one row per label
/// in the listed order.
inline MatrixInput parse_matrix(std::string_view text) {
  const auto lines = detail::tokenize(text);
  if (lines.empty()) fail(ErrorKind::ParseError, "empty matrix file");
  std::size_t at = 0;
  const Field f = parse_field_tokens(lines[at].tokens, lines[at].number);
  ++at;
  std::optional<SesquiMorphism> sigma;
  if (at < lines.size() && lines[at].tokens.front() == "sigma") {
    sigma = parse_sigma_tokens(f, lines[at].tokens, lines[at].number);
    ++at;
  }
  if (at >= lines.size()) fail(ErrorKind::ParseError, "missing labels line");
  detail::expect_keyword(lines[at], "labels", 1);
  const std::vector<std::string> labels(lines[at].tokens.begin() + 1, lines[at].tokens.end());
  ++at;
  if (lines.size() - at != labels.size())
    fail(ErrorKind::ParseError, "expected " + std::to_string(labels.size()) + " rows, found " +
                                    std::to_string(lines.size() - at));
  std::vector<std::vector<Elem>> rows;
  for (; at < lines.size(); ++at) {
    const auto& line = lines[at];
    if (line.tokens.size() != labels.size()) detail::parse_fail(line, "row length does not match labels");
    std::vector<Elem> row;
    for (const auto& tok : line.tokens) row.push_back(detail::parse_elem(f, line, tok));
    rows.push_back(std::move(row));
  }
  return {LabeledMatrix::from_rows(f, labels, rows), sigma};
}

inline std::string format_matrix(const LabeledMatrix& m, const std::optional<SesquiMorphism>& sigma = std::nullopt) {
  std::string s = field_line(m.field()) + "\n";
  if (sigma) s += sigma_line(*sigma) + "\n";
  s += labels_line(m.labels()) + "\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) s += (j ? " " : "") + m.field().format(m(i, j));
    s += "\n";
  }
  return s;
}

/// `digraph n`, optional `labels`, then `arc u v` lines.
inline DirectedGraph parse_digraph(std::string_view text) {
  const auto lines = detail::tokenize(text);
  if (lines.empty()) fail(ErrorKind::ParseError, "empty graph file");
  detail::expect_keyword(lines[0], "digraph", 2);
  const int n = detail::to_int(lines[0], lines[0].tokens[1]);
  if (n < 0) detail::parse_fail(lines[0], "negative vertex count");
  if (static_cast<std::size_t>(n) > kMaxLabels) fail(ErrorKind::SizeLimitExceeded, "at most 24 vertices supported");
  std::size_t at = 1;
  std::vector<std::string> labels = LabeledMatrix::default_labels(static_cast<std::size_t>(n));
  if (at < lines.size() && lines[at].tokens.front() == "labels") {
    labels.assign(lines[at].tokens.begin() + 1, lines[at].tokens.end());
    if (labels.size() != static_cast<std::size_t>(n)) detail::parse_fail(lines[at], "label count differs from n");
    ++at;
  }
  DirectedGraph g(labels);
  for (; at < lines.size(); ++at) {
    const auto& line = lines[at];
    detail::expect_keyword(line, "arc", 3);
    if (line.tokens.size() != 3) detail::parse_fail(line, "arc takes two vertices");
    try {
      g.add_arc(line.tokens[1], line.tokens[2]);
    } catch (const Error& e) {
      detail::parse_fail(line, e.what());
    }
  }
  return g;
}

inline std::string format_digraph(const DirectedGraph& g) {
  std::string s = "digraph " + std::to_string(g.size()) + "\n";
  if (g.labels() != LabeledMatrix::default_labels(g.size())) s += labels_line(g.labels()) + "\n";
  for (auto [u, v] : g.arcs()) s += "arc " + g.labels()[u] + " " + g.labels()[v] + "\n";
  return s;
}

struct FGraphInput {
  FStarGraph graph;
  SesquiMorphism sigma;
};

/// `fgraph`, `field`, optional `sigma` (identity otherwise), `labels`, then
/// `edge u v c` lines. An edge sets m_uv = c and, unless (v,u) is listed
/// too, m_vu = sigma(c).
inline FGraphInput parse_fgraph(std::string_view text) {
  const auto lines = detail::tokenize(text);
  if (lines.size() < 3) fail(ErrorKind::ParseError, "fgraph needs fgraph, field and labels lines");
  detail::expect_keyword(lines[0], "fgraph", 1);
  const Field f = parse_field_tokens(lines[1].tokens, lines[1].number);
  std::size_t at = 2;
  SesquiMorphism sigma = SesquiMorphism::identity(f);
  if (lines[at].tokens.front() == "sigma") {
    sigma = parse_sigma_tokens(f, lines[at].tokens, lines[at].number);
    ++at;
  }
  if (at >= lines.size()) fail(ErrorKind::ParseError, "missing labels line");
  detail::expect_keyword(lines[at], "labels", 1);
  LabeledMatrix m(f, std::vector<std::string>(lines[at].tokens.begin() + 1, lines[at].tokens.end()));
  ++at;
  const std::size_t n = m.size();
  std::vector<bool> explicit_entry(n * n, false);
  struct Pending {
    std::size_t u, v;
    Elem c;
  };
  std::vector<Pending> edges;
  for (; at < lines.size(); ++at) {
    const auto& line = lines[at];
    detail::expect_keyword(line, "edge", 4);
    if (line.tokens.size() != 4) detail::parse_fail(line, "edge takes two vertices and a colour");
    std::size_t u = 0, v = 0;
    try {
      u = m.index_of(line.tokens[1]);
      v = m.index_of(line.tokens[2]);
    } catch (const Error& e) {
      detail::parse_fail(line, e.what());
    }
    if (explicit_entry[u * n + v]) detail::parse_fail(line, "edge listed twice");
    explicit_entry[u * n + v] = true;
    edges.push_back({u, v, detail::parse_elem(f, line, line.tokens[3])});
  }
  for (const auto& e : edges) m(e.u, e.v) = e.c;
  for (const auto& e : edges)
    if (!explicit_entry[e.v * n + e.u]) m(e.v, e.u) = sigma(e.c);
  return {std::move(m), sigma};
}

inline std::string format_fgraph(const FStarGraph& g, const SesquiMorphism& sigma) {
  const Field& f = g.field();
  std::string s = "fgraph\n" + field_line(f) + "\n";
  if (!sigma.is_identity()) s += sigma_line(sigma) + "\n";
  s += labels_line(g.labels()) + "\n";
  for (std::size_t u = 0; u < g.size(); ++u)
    for (std::size_t v = u; v < g.size(); ++v) {
      const bool implied = g(v, u) == sigma(g(u, v));
      if (g(u, v) != f.zero() || !implied)
        s += "edge " + g.labels()[u] + " " + g.labels()[v] + " " + f.format(g(u, v)) + "\n";
      if (u != v && !implied) s += "edge " + g.labels()[v] + " " + g.labels()[u] + " " + f.format(g(v, u)) + "\n";
    }
  return s;
}

// JSON forms

inline Json field_json(const Field& f) {
  return {{"p", f.characteristic()}, {"k", f.degree()}, {"modulus", f.modulus()}};
}

inline Json sigma_json(const SesquiMorphism& s) {
  return {{"j", s.frobenius_power()}, {"s", s.field().format(s.unit())}};
}

inline Json matrix_json(const LabeledMatrix& m, const std::optional<SesquiMorphism>& sigma = std::nullopt,
                        std::string_view type = "matrix") {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m.field().format(m(i, j)));
    rows.push_back(std::move(row));
  }
  Json j = {{"type", type}, {"field", field_json(m.field())}, {"labels", m.labels()}, {"rows", std::move(rows)}};
  if (sigma) j["sigma"] = sigma_json(*sigma);
  return j;
}

inline Json digraph_json(const DirectedGraph& g) {
  Json arcs = Json::array();
  for (auto [u, v] : g.arcs()) arcs.push_back({g.labels()[u], g.labels()[v]});
  return {{"type", "digraph"}, {"labels", g.labels()}, {"arcs", std::move(arcs)}};
}

inline Json delta_matroid_json(const DeltaMatroid& d) {
  Json feasible = Json::array();
  for (Subset f : d.feasible()) feasible.push_back(labels_of(d.ground(), f));
  return {{"type", "delta-matroid"}, {"ground", d.ground()}, {"feasible", std::move(feasible)}};
}

inline Json chain_json(const Chain& c, const Field& f) {
  Json values = Json::object();
  for (std::size_t i = 0; i < c.size(); ++i) values[c.ground[i]] = {f.format(c[i].a), f.format(c[i].b)};
  return values;
}

inline Json chain_group_json(const ChainGroup& l) {
  Json basis = Json::array();
  for (const auto& c : l.chains()) basis.push_back(chain_json(c, l.field()));
  return {{"type", "chain-group"},
          {"field", field_json(l.field())},
          {"sigma", sigma_json(l.sigma())},
          {"ground", l.ground()},
          {"dim", l.dim()},
          {"basis", std::move(basis)}};
}

namespace detail {

template <class T>
T json_get(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::ParseError, std::string("JSON input lacks '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(ErrorKind::ParseError, std::string("JSON field '") + key + "' has the wrong type");
  }
}

inline Field field_from_json(const Json& j) {
  return Field::make(json_get<int>(j, "p"), json_get<int>(j, "k"), json_get<std::vector<int>>(j, "modulus"));
}

inline SesquiMorphism sigma_from_json(const Field& f, const Json& j) {
  return SesquiMorphism::make(f, json_get<int>(j, "j"), f.parse(json_get<std::string>(j, "s")));
}

}  // namespace detail

inline MatrixInput matrix_from_json(const Json& j) {
  const Field f = detail::field_from_json(detail::json_get<Json>(j, "field"));
  std::optional<SesquiMorphism> sigma;
  if (j.contains("sigma")) sigma = detail::sigma_from_json(f, j.at("sigma"));
  const auto labels = detail::json_get<std::vector<std::string>>(j, "labels");
  const auto text = detail::json_get<std::vector<std::vector<std::string>>>(j, "rows");
  std::vector<std::vector<Elem>> rows;
  for (const auto& r : text) {
    std::vector<Elem> row;
    for (const auto& e : r) row.push_back(f.parse(e));
    rows.push_back(std::move(row));
  }
  return {LabeledMatrix::from_rows(f, labels, rows), sigma};
}

inline DirectedGraph digraph_from_json(const Json& j) {
  DirectedGraph g(detail::json_get<std::vector<std::string>>(j, "labels"));
  for (const auto& arc : detail::json_get<std::vector<std::vector<std::string>>>(j, "arcs")) {
    if (arc.size() != 2) fail(ErrorKind::ParseError, "an arc needs two vertices");
    g.add_arc(arc[0], arc[1]);
  }
  return g;
}

inline DeltaMatroid delta_matroid_from_json(const Json& j) {
  const auto ground = detail::json_get<std::vector<std::string>>(j, "ground");
  std::vector<std::string> sorted = ground;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != ground) fail(ErrorKind::ParseError, "ground list must be sorted");
  std::vector<Subset> feasible;
  for (const auto& set : detail::json_get<std::vector<std::vector<std::string>>>(j, "feasible")) {
    Subset s;
    for (const auto& label : set) {
      auto it = std::lower_bound(ground.begin(), ground.end(), label);
      if (it == ground.end() || *it != label) fail(ErrorKind::ParseError, "unknown ground element '" + label + "'");
      s = s.with(static_cast<std::size_t>(it - ground.begin()));
    }
    feasible.push_back(s);
  }
  return DeltaMatroid(ground, std::move(feasible));
}

/// Any supported input, recognised by its first keyword or a JSON object.
struct Input {
  enum class Kind { Matrix, Digraph, FGraph, DeltaMatroid };
  Kind kind = Kind::Matrix;
  std::optional<LabeledMatrix> matrix;
  std::optional<SesquiMorphism> sigma;
  std::optional<DirectedGraph> digraph;
  std::optional<DeltaMatroid> delta_matroid;
};

inline Input parse_input(std::string_view text) {
  Input in;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
    }
    const auto type = detail::json_get<std::string>(j, "type");
    if (type == "matrix" || type == "fgraph") {
      auto mi = matrix_from_json(j);
      in.kind = type == "matrix" ? Input::Kind::Matrix : Input::Kind::FGraph;
      in.matrix = std::move(mi.matrix);
      in.sigma = mi.sigma;
      if (in.kind == Input::Kind::FGraph && !in.sigma) in.sigma = SesquiMorphism::identity(in.matrix->field());
    } else if (type == "digraph") {
      in.kind = Input::Kind::Digraph;
      in.digraph = digraph_from_json(j);
    } else if (type == "delta-matroid") {
      in.kind = Input::Kind::DeltaMatroid;
      in.delta_matroid = delta_matroid_from_json(j);
    } else {
      fail(ErrorKind::ParseError, "unknown JSON input type '" + type + "'");
    }
    return in;
  }
  const auto lines = detail::tokenize(text);
  if (lines.empty()) fail(ErrorKind::ParseError, "empty input");
  const auto& head = lines.front().tokens.front();
  if (head == "digraph") {
    in.kind = Input::Kind::Digraph;
    in.digraph = parse_digraph(text);
  } else if (head == "fgraph") {
    auto fg = parse_fgraph(text);
    in.kind = Input::Kind::FGraph;
    in.matrix = std::move(fg.graph);
    in.sigma = fg.sigma;
  } else if (head == "field") {
    auto mi = parse_matrix(text);
    in.matrix = std::move(mi.matrix);
    in.sigma = mi.sigma;
  } else {
    fail(ErrorKind::ParseError, "unrecognised input header '" + head + "'");
  }
  return in;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Input load_input(const std::string& path) { return parse_input(read_text_file(path)); }

/// Comma- or space-separated labels; empty text is the empty set.
inline std::vector<std::string> split_labels(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',' || c == ' ') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

inline std::string set_string(const std::vector<std::string>& ground, Subset s) {
  std::string out = "{";
  bool first = true;
  for (auto i : s.members()) {
    out += (first ? "" : ",") + ground[i];
    first = false;
  }
  return out + "}";
}

inline std::string chain_string(const Chain& c, const Field& f) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i)
    s += (i ? " " : "") + c.ground[i] + ":(" + f.format(c[i].a) + "," + f.format(c[i].b) + ")";
  return s;
}

}  // namespace sigsym
