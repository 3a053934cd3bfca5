#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include "sigsym/io.hpp"
#include "sigsym/sigsym.hpp"

using namespace sigsym;

namespace {

struct Globals {
  bool json = false;
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::size_t> max_n;
  std::vector<int> fields;

  std::size_t limit(std::size_t fallback) const { return max_n.value_or(fallback); }
};

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

void require_size(std::size_t n, std::size_t limit, const std::string& what) {
  if (n > limit)
    fail(ErrorKind::SizeLimitExceeded, what + " on " + std::to_string(n) + " vertices exceeds --max-n " +
                                           std::to_string(limit));
}

/// A matrix input with the sesqui-morphism it is read under.
struct Loaded {
  Input::Kind kind = Input::Kind::Matrix;
  LabeledMatrix m;
  std::optional<SesquiMorphism> given_sigma;
};

Loaded load_matrix(const std::string& path) {
  Input in = load_input(path);
  switch (in.kind) {
    case Input::Kind::Digraph:
      return {in.kind, digraph_to_gf4(*in.digraph), gf4_conjugation()};
    case Input::Kind::DeltaMatroid:
      fail(ErrorKind::InvalidArgument, "expected a matrix or graph, got a delta-matroid");
    default:
      return {in.kind, std::move(*in.matrix), in.sigma};
  }
}

struct Symmetric {
  Loaded in;
  SesquiMorphism sigma;
  EpsilonSign eps;
};

Symmetric load_symmetric(const std::string& path) {
  Loaded in = load_matrix(path);
  std::optional<SesquiMorphism> s = in.given_sigma ? in.given_sigma : find_sigma(in.m);
  if (!s) fail(ErrorKind::NotSigmaEpsSymmetric, "matrix is not (sigma, eps)-symmetric for any sigma");
  const auto eps = sigma_eps_check(in.m, *s);
  if (!eps) fail(ErrorKind::NotSigmaEpsSymmetric, "matrix is not (sigma, eps)-symmetric for " + s->describe());
  SesquiMorphism sigma = *s;
  return {std::move(in), std::move(sigma), *eps};
}

Subset parse_set(const LabeledMatrix& m, const std::string& text) {
  Subset s;
  for (const auto& label : split_labels(text)) s = s.with(m.index_of(label));
  return s;
}

KVector parse_kvector(const Field& f, const std::string& text) {
  const auto parts = split_labels(text);
  if (parts.size() != 2) fail(ErrorKind::InvalidArgument, "expected two comma-separated elements, got '" + text + "'");
  return {f.parse(parts[0]), f.parse(parts[1])};
}

Json labels_json(const std::vector<std::string>& ground, Subset s) {
  Json out = Json::array();
  for (auto i : s.members()) out.push_back(ground[i]);
  return out;
}

/// Writes a matrix in the same kind of format it was read from.
void emit_graph(const Globals& g, const Loaded& in, const LabeledMatrix& m, const SesquiMorphism& sigma) {
  if (in.kind == Input::Kind::Digraph) {
    const auto d = gf4_to_digraph(m);
    if (g.json)
      print_json(digraph_json(d));
    else
      std::cout << format_digraph(d);
  } else if (in.kind == Input::Kind::FGraph) {
    if (g.json)
      print_json(matrix_json(m, sigma, "fgraph"));
    else
      std::cout << format_fgraph(m, sigma);
  } else {
    if (g.json)
      print_json(matrix_json(m, in.given_sigma));
    else
      std::cout << format_matrix(m, in.given_sigma);
  }
}

void emit_matrix(const Globals& g, const LabeledMatrix& m, const std::optional<SesquiMorphism>& sigma) {
  if (g.json)
    print_json(matrix_json(m, sigma));
  else
    std::cout << format_matrix(m, sigma);
}

std::string move_string(const std::vector<std::string>& labels, const Field& f, const PivotMove& mv) {
  switch (mv.kind) {
    case PivotMove::Kind::Pivot: return "pivot " + set_string(labels, mv.set);
    case PivotMove::Kind::Scale: return "scale " + labels[mv.vertex] + " " + f.format(mv.p);
    case PivotMove::Kind::LeftSign: return "left-sign " + labels[mv.vertex];
    case PivotMove::Kind::RightSign: return "right-sign " + labels[mv.vertex];
  }
  return "";
}

// ---------------------------------------------------------------- commands

void cmd_sesqui_list(const Globals& g, const std::vector<std::string>& field_args) {
  std::vector<std::string> tokens{"field"};
  tokens.insert(tokens.end(), field_args.begin(), field_args.end());
  const Field f = parse_field_tokens(tokens);
  const auto all = enumerate_sesqui(f);
  if (g.json) {
    Json list = Json::array();
    for (const auto& s : all) {
      Json table = Json::object();
      for (Elem x : f.elements()) table[f.format(x)] = f.format(s(x));
      list.push_back({{"j", s.frobenius_power()}, {"s", f.format(s.unit())}, {"values", table}});
    }
    print_json({{"field", field_json(f)}, {"sesqui", list}});
    return;
  }
  std::cout << field_line(f) << "\n" << all.size() << " sesqui-morphisms\n";
  for (const auto& s : all) {
    std::cout << sigma_line(s) << " :";
    for (Elem x : f.elements()) std::cout << " " << f.format(x) << "->" << f.format(s(x));
    std::cout << "\n";
  }
}

void cmd_rank_width(const Globals& g, const std::string& path) {
  const Loaded in = load_matrix(path);
  require_size(in.m.size(), g.limit(5), "rank-width");
  const auto r = rank_width(in.m);
  const std::string layout = in.m.size() ? r.layout.to_string(in.m.labels()) : "";
  if (g.json)
    print_json({{"width", r.width}, {"layout", layout}});
  else
    std::cout << "width " << r.width << "\nlayout " << layout << "\n";
}

void cmd_cut_rank(const Globals& g, const std::string& path, const std::string& set) {
  const Loaded in = load_matrix(path);
  const Subset x = parse_set(in.m, set);
  const std::size_t r = cut_rank(in.m, x);
  if (g.json)
    print_json({{"set", labels_json(in.m.labels(), x)}, {"cut_rank", r}});
  else
    std::cout << r << "\n";
}

void cmd_schur(const Globals& g, const std::string& path, const std::string& set) {
  const Loaded in = load_matrix(path);
  emit_matrix(g, schur_complement(in.m, parse_set(in.m, set)), std::nullopt);
}

void cmd_ppt(const Globals& g, const std::string& path, const std::string& set) {
  const Loaded in = load_matrix(path);
  emit_matrix(g, ppt(in.m, parse_set(in.m, set)), std::nullopt);
}

void cmd_tucker(const Globals& g, const std::string& path, const std::string& xs, const std::string& zs) {
  const Loaded in = load_matrix(path);
  const Field& f = in.m.field();
  const Subset x = parse_set(in.m, xs), z = parse_set(in.m, zs);
  const bool holds = tucker_check(in.m, x, z);
  const Elem lhs = principal_det(ppt(in.m, x), z);
  const Elem dx = principal_det(in.m, x), dzx = principal_det(in.m, z ^ x);
  if (g.json) {
    print_json({{"holds", holds},
                {"det_pivoted_z", f.format(lhs)},
                {"det_x", f.format(dx)},
                {"det_z_sym_x", f.format(dzx)}});
    return;
  }
  std::cout << "det((M*X)[Z]) = " << f.format(lhs) << "\ndet(M[X]) = " << f.format(dx)
            << "\ndet(M[Z^X]) = " << f.format(dzx) << "\n"
            << (holds ? "identity holds" : "identity fails") << "\n";
}

ChainGroup build_group(const Symmetric& s) {
  return from_matrix(s.in.m, s.sigma, SupplementaryPair::standard(s.sigma, s.in.m.labels(), s.eps));
}

void emit_group(const Globals& g, const ChainGroup& l) {
  if (g.json) {
    Json j = chain_group_json(l);
    j["isotropic"] = is_isotropic(l);
    j["lagrangian"] = is_lagrangian(l);
    print_json(j);
    return;
  }
  std::cout << "ground " << l.labels_string() << "\ndim " << l.dim() << "\n"
            << "isotropic " << (is_isotropic(l) ? "yes" : "no") << "\nlagrangian " << (is_lagrangian(l) ? "yes" : "no")
            << "\n";
  for (const auto& c : l.chains()) std::cout << "  " << chain_string(c, l.field()) << "\n";
}

void cmd_chain_build(const Globals& g, const std::string& path) { emit_group(g, build_group(load_symmetric(path))); }

void cmd_chain_eulerian(const Globals& g, const std::string& path, const std::string& alpha,
                        const std::string& beta) {
  const Symmetric s = load_symmetric(path);
  const ChainGroup l = build_group(s);
  const Field& f = l.field();
  const KVector a = alpha.empty() ? KVector{f.one(), f.zero()} : parse_kvector(f, alpha);
  const KVector b = beta.empty() ? KVector{f.zero(), s.sigma.unit()} : parse_kvector(f, beta);
  const Chain e = eulerian_chain(l, a, b);
  if (g.json)
    print_json({{"alpha", {f.format(a.a), f.format(a.b)}}, {"beta", {f.format(b.a), f.format(b.b)}}, {"chain", chain_json(e, f)}});
  else
    std::cout << chain_string(e, f) << "\n";
}

void cmd_chain_lambda(const Globals& g, const std::string& path, const std::string& set) {
  const Symmetric s = load_symmetric(path);
  const ChainGroup l = build_group(s);
  const Subset x = parse_set(s.in.m, set);
  const std::size_t v = connectivity(l, x);
  if (g.json)
    print_json({{"set", labels_json(l.ground(), x)}, {"connectivity", v}});
  else
    std::cout << v << "\n";
}

void cmd_chain_minor(const Globals& g, const std::string& path, const std::string& xs, const std::string& ys,
                     const std::string& alpha, const std::string& beta) {
  const Symmetric s = load_symmetric(path);
  const ChainGroup l = build_group(s);
  const Field& f = l.field();
  const KVector a = alpha.empty() ? KVector{f.one(), f.zero()} : parse_kvector(f, alpha);
  const KVector b = beta.empty() ? KVector{f.zero(), s.sigma.unit()} : parse_kvector(f, beta);
  if (a.is_zero() || b.is_zero()) fail(ErrorKind::ZeroVector, "alpha and beta must be non-zero");
  emit_group(g, double_minor(l, a, b, parse_set(s.in.m, xs), parse_set(s.in.m, ys)));
}

void cmd_pivot(const Globals& g, const std::string& path, const std::string& set, const std::string& left,
               const std::string& right, bool loop) {
  const Symmetric s = load_symmetric(path);
  const LoopPivotParams params{parse_set(s.in.m, set), parse_set(s.in.m, left), parse_set(s.in.m, right), std::nullopt};
  const LabeledMatrix out = loop ? loop_pivot(s.in.m, s.sigma, params) : pivot(s.in.m, s.sigma, params);
  emit_graph(g, s.in, out, s.sigma);
}

void cmd_pivot_class(const Globals& g, const std::string& path, bool loop, bool list) {
  const Symmetric s = load_symmetric(path);
  require_size(s.in.m.size(), g.limit(4), "pivot-class");
  const PivotMode mode = loop ? PivotMode::Loop : PivotMode::LoopFree;
  const auto cls = pivot_class(s.in.m, s.sigma, mode, {g.limit(4), 5, 20000});
  if (cls.truncated) fail(ErrorKind::SizeLimitExceeded, "pivot class exceeds 20000 members");
  const std::size_t w = rank_width(s.in.m).width;
  const Field& f = s.in.m.field();
  if (g.json) {
    Json members = Json::array();
    if (list)
      for (std::size_t i = 0; i < cls.size(); ++i) {
        Json trace = Json::array();
        for (const auto& mv : cls.trace(i)) trace.push_back(move_string(s.in.m.labels(), f, mv));
        const auto& m = cls.members[i].graph;
        members.push_back({{"graph", s.in.kind == Input::Kind::Digraph ? digraph_json(gf4_to_digraph(m))
                                                                       : matrix_json(m, s.sigma, "fgraph")},
                           {"trace", trace}});
      }
    Json j = {{"mode", loop ? "loop" : "loop-free"}, {"size", cls.size()}, {"rank_width", w}};
    if (list) j["members"] = members;
    print_json(j);
    return;
  }
  std::cout << "mode " << (loop ? "loop" : "loop-free") << "\nsize " << cls.size() << "\nrank-width " << w << "\n";
  if (!list) return;
  for (std::size_t i = 0; i < cls.size(); ++i) {
    std::cout << "\n# member " << i;
    for (const auto& mv : cls.trace(i)) std::cout << " | " << move_string(s.in.m.labels(), f, mv);
    std::cout << "\n";
    const auto& m = cls.members[i].graph;
    if (s.in.kind == Input::Kind::Digraph)
      std::cout << format_digraph(gf4_to_digraph(m));
    else
      std::cout << format_fgraph(m, s.sigma);
  }
}

void cmd_pivot_minor(const Globals& g, const std::string& h_path, const std::string& g_path, bool loop) {
  const Symmetric h = load_symmetric(h_path);
  const Symmetric gg = load_symmetric(g_path);
  if (!(h.sigma == gg.sigma)) fail(ErrorKind::FieldMismatch, "graphs are read under different sesqui-morphisms");
  require_size(gg.in.m.size(), g.limit(4), "pivot-minor-check");
  const PivotMode mode = loop ? PivotMode::Loop : PivotMode::LoopFree;
  const auto w = pivot_minor_check(h.in.m, gg.in.m, gg.sigma, mode, {g.limit(4), 5, 20000});
  const auto& labels = gg.in.m.labels();
  const Field& f = gg.in.m.field();
  if (g.json) {
    Json j = {{"mode", loop ? "loop" : "loop-free"}, {"pivot_minor", w.has_value()}};
    if (w) {
      Json trace = Json::array(), emb = Json::object();
      for (const auto& mv : w->trace) trace.push_back(move_string(labels, f, mv));
      for (std::size_t v = 0; v < h.in.m.size(); ++v) emb[h.in.m.labels()[v]] = labels[w->embedding[v]];
      j["trace"] = trace;
      j["embedding"] = emb;
    }
    print_json(j);
    return;
  }
  std::cout << "pivot-minor " << (w ? "yes" : "no") << "\n";
  if (!w) return;
  std::cout << "trace";
  if (w->trace.empty()) std::cout << " (none)";
  for (const auto& mv : w->trace) std::cout << " | " << move_string(labels, f, mv);
  std::cout << "\nembedding";
  for (std::size_t v = 0; v < h.in.m.size(); ++v) std::cout << " " << h.in.m.labels()[v] << "->" << labels[w->embedding[v]];
  std::cout << "\n";
}

void cmd_delta_matroid(const Globals& g, const std::string& path) {
  const Loaded in = load_matrix(path);
  require_size(in.m.size(), g.limit(5), "delta-matroid");
  const DeltaMatroid d = delta_matroid_of(in.m);
  if (g.json) {
    print_json(delta_matroid_json(d));
    return;
  }
  std::cout << "ground";
  for (const auto& x : d.ground()) std::cout << " " << x;
  std::cout << "\nfeasible";
  for (Subset f : d.feasible()) std::cout << " " << set_string(d.ground(), f);
  std::cout << "\nexchange " << (sea_check(d) ? "fails" : "holds") << "\n";
  if (find_sigma(in.m)) std::cout << "branch-width bound " << branch_width_bound(in.m) << "\n";
}

void cmd_sea_check(const Globals& g, const std::string& path) {
  Input in = load_input(path);
  std::optional<DeltaMatroid> d;
  if (in.kind == Input::Kind::DeltaMatroid) {
    d = std::move(in.delta_matroid);
  } else {
    const Loaded m = load_matrix(path);
    require_size(m.m.size(), g.limit(5), "sea-check");
    d = delta_matroid_of(m.m);
  }
  const auto v = sea_check(*d);
  if (g.json) {
    Json j = {{"holds", !v.has_value()}};
    if (v)
      j["violation"] = {{"F", labels_json(d->ground(), v->f)},
                        {"F_prime", labels_json(d->ground(), v->f_prime)},
                        {"x", d->ground()[v->x]}};
    print_json(j);
    return;
  }
  if (!v) {
    std::cout << "exchange holds\n";
    return;
  }
  std::cout << "exchange fails: F=" << set_string(d->ground(), v->f) << " F'=" << set_string(d->ground(), v->f_prime)
            << " x=" << d->ground()[v->x] << "\n";
}

int cmd_verify(const Globals& g, std::size_t samples, const std::string& filter, bool timings) {
  VerifyOptions o;
  o.seed = g.seed;
  o.max_n = g.limit(5);
  o.search_n = std::min<std::size_t>(4, o.max_n);
  o.samples = samples;
  o.filter = filter;
  if (!g.fields.empty()) {
    o.fields.clear();
    for (int q : g.fields) o.fields.push_back(field_of_order(q));
  }
  std::string field_list;
  for (const auto& f : o.fields) field_list += (field_list.empty() ? "" : ",") + std::to_string(f.order());
  if (!g.json)
    std::cout << "seed " << o.seed << "  max-n " << o.max_n << "  fields " << field_list << "  samples " << samples
              << std::endl;
  const Report r = run_verify(o, [&](const CheckResult& c) {
    if (g.json) return;
    std::cout << (c.ok() ? "PASS " : "FAIL ") << c.module << "/" << c.name << "  cases=" << c.cases
              << "  failures=" << c.failures;
    if (timings) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "  %.2fs", c.seconds);
      std::cout << buf;
    }
    std::cout << "\n";
    if (!c.ok()) std::cout << "     first failure: " << c.first_failure << "\n";
    std::cout.flush();
  });
  std::size_t passed = 0;
  for (const auto& c : r.checks) passed += c.ok();
  if (g.json) {
    Json checks = Json::array();
    for (const auto& c : r.checks) {
      Json j = {{"module", c.module}, {"name", c.name},         {"claim", c.claim},
                {"cases", c.cases},   {"failures", c.failures}, {"passed", c.ok()}};
      if (!c.ok()) j["first_failure"] = c.first_failure;
      if (timings) j["seconds"] = c.seconds;
      checks.push_back(j);
    }
    print_json({{"seed", o.seed},
                {"max_n", o.max_n},
                {"fields", field_list},
                {"samples", samples},
                {"passed", passed},
                {"failed", r.checks.size() - passed},
                {"checks", checks}});
  } else {
    std::cout << r.checks.size() << " checks, " << passed << " passed, " << r.checks.size() - passed << " failed\n";
  }
  return r.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with (sigma, eps)-symmetric matrices, chain groups and pivot-minors"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_option("--seed", g.seed, "Seed for sampled checks");
  app.add_option("--max-n", g.max_n, "Largest ground set for exponential searches");
  app.add_option("--fields", g.fields, "Field orders for verify, e.g. 2,3,4,5")->delimiter(',');

  int rc = 0;
  std::string path, path2, set, xs, zs, ys, left, right, alpha, beta, filter;
  std::vector<std::string> field_args;
  bool loop = false, list = false, timings = false;
  std::size_t samples = 40;

  auto* sesqui = app.add_subcommand("sesqui", "Sesqui-morphisms of a field")->fallthrough();
  sesqui->require_subcommand(1);
  auto* sesqui_list = sesqui->add_subcommand("list", "List every sesqui-morphism")->fallthrough();
  sesqui_list->add_option("--field", field_args, "p [k [c0 ... ck]]")->required()->expected(1, -1);
  sesqui_list->callback([&] { cmd_sesqui_list(g, field_args); });

  auto* rw = app.add_subcommand("rank-width", "Rank-width and an optimal layout")->fallthrough();
  auto* rw_file = rw->add_option("file", path, "Matrix or graph file");
  auto* rw_digraph = rw->add_option("--digraph", path, "Digraph file")->excludes(rw_file);
  rw->add_option("--matrix", path, "Matrix file")->excludes(rw_file)->excludes(rw_digraph);
  rw->callback([&] {
    if (path.empty()) throw CLI::RequiredError("an input file");
    cmd_rank_width(g, path);
  });

  auto add_file_set = [&](CLI::App* sub) {
    sub->add_option("file", path, "Matrix or graph file")->required();
    sub->add_option("--set", set, "Vertex labels, comma separated")->required();
  };
  auto* cr = app.add_subcommand("cut-rank", "rank M[X, V\\X]")->fallthrough();
  add_file_set(cr);
  cr->callback([&] { cmd_cut_rank(g, path, set); });
  auto* schur = app.add_subcommand("schur", "Schur complement M/M[X]")->fallthrough();
  add_file_set(schur);
  schur->callback([&] { cmd_schur(g, path, set); });
  auto* ppt_cmd = app.add_subcommand("ppt", "Principal pivot transform M*X")->fallthrough();
  add_file_set(ppt_cmd);
  ppt_cmd->callback([&] { cmd_ppt(g, path, set); });

  auto* tk = app.add_subcommand("tucker-check", "det((M*X)[Z]) against det(M[Z^X]) / det(M[X])")->fallthrough();
  tk->add_option("file", path, "Matrix file")->required();
  tk->add_option("--x", xs, "Pivot set X")->required();
  tk->add_option("--z", zs, "Set Z")->required();
  tk->callback([&] { cmd_tucker(g, path, xs, zs); });

  auto* cg = app.add_subcommand("chaingroup", "Chain group of a symmetric matrix")->fallthrough();
  cg->require_subcommand(1);
  auto* cg_build = cg->add_subcommand("build", "Chain group with the standard supplementary pair")->fallthrough();
  cg_build->add_option("file", path, "Matrix or graph file")->required();
  cg_build->callback([&] { cmd_chain_build(g, path); });
  auto* cg_eul = cg->add_subcommand("eulerian", "An eulerian chain with values in span(alpha, beta)")->fallthrough();
  cg_eul->add_option("file", path, "Matrix or graph file")->required();
  cg_eul->add_option("--alpha", alpha, "alpha as a,b (default 1,0)");
  cg_eul->add_option("--beta", beta, "beta as a,b (default 0,sigma(1))");
  cg_eul->callback([&] { cmd_chain_eulerian(g, path, alpha, beta); });
  auto* cg_lambda = cg->add_subcommand("lambda", "Connectivity of X")->fallthrough();
  add_file_set(cg_lambda);
  cg_lambda->callback([&] { cmd_chain_lambda(g, path, set); });
  auto* cg_minor = cg->add_subcommand("minor", "Minor by beta at X then alpha at Y")->fallthrough();
  cg_minor->add_option("file", path, "Matrix or graph file")->required();
  cg_minor->add_option("--x", xs, "Set X (minor by beta)");
  cg_minor->add_option("--y", ys, "Set Y (minor by alpha)");
  cg_minor->add_option("--alpha", alpha, "alpha as a,b (default 1,0)");
  cg_minor->add_option("--beta", beta, "beta as a,b (default 0,sigma(1))");
  cg_minor->callback([&] { cmd_chain_minor(g, path, xs, ys, alpha, beta); });

  auto add_pivot = [&](const char* name, const char* help, bool is_loop) {
    auto* sub = app.add_subcommand(name, help)->fallthrough();
    add_file_set(sub);
    sub->add_option("--left", left, "Vertices with a left sign change");
    sub->add_option("--right", right, "Vertices with a right sign change");
    sub->callback([&, is_loop] { cmd_pivot(g, path, set, left, right, is_loop); });
  };
  add_pivot("pivot", "Pivot of a loop-free graph at X", false);
  add_pivot("loop-pivot", "Loop-pivot (complementation) at X", true);

  auto* pc = app.add_subcommand("pivot-class", "Graphs reachable by pivots, up to isomorphism")->fallthrough();
  pc->add_option("file", path, "Graph file")->required();
  pc->add_flag("--loop", loop, "Loop-pivots instead of pivots");
  pc->add_flag("--list", list, "Print every member with the moves reaching it");
  pc->callback([&] { cmd_pivot_class(g, path, loop, list); });

  auto* pm = app.add_subcommand("pivot-minor-check", "Is H a pivot-minor of G")->fallthrough();
  pm->add_option("H", path, "Graph H")->required();
  pm->add_option("G", path2, "Graph G")->required();
  pm->add_flag("--loop", loop, "Loop-pivots instead of pivots");
  pm->callback([&] { cmd_pivot_minor(g, path, path2, loop); });

  auto* dm = app.add_subcommand("delta-matroid", "Non-singular principal sets of a matrix")->fallthrough();
  dm->add_option("file", path, "Matrix or graph file")->required();
  dm->callback([&] { cmd_delta_matroid(g, path); });

  auto* sea = app.add_subcommand("sea-check", "Symmetric exchange for a matrix or delta-matroid")->fallthrough();
  sea->add_option("file", path, "Matrix, graph or delta-matroid JSON file")->required();
  sea->callback([&] { cmd_sea_check(g, path); });

  auto* vf = app.add_subcommand("verify", "Run the invariant suite of every module")->fallthrough();
  vf->add_option("--samples", samples, "Sampled cases per field and check");
  vf->add_option("--filter", filter, "Only checks whose module/name contains this text");
  vf->add_flag("--timings", timings, "Report seconds per check");
  vf->callback([&] { rc = cmd_verify(g, samples, filter, timings); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
