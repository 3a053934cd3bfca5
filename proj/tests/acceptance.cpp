// Acceptance run: one PASS/FAIL line per criterion. Each criterion runs the
// library checks at the required scope, plus an independent reference
// computation (oracles.hpp or a frozen table) where one exists.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "sigsym/sigsym.hpp"

using namespace sigsym;

namespace {

struct Outcome {
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::string first_failure;
  std::string note;

  void add(const Tally& t, const std::string& label) {
    cases += t.cases;
    if (t.failures > 0 && failures == 0) first_failure = label + ": " + t.first_failure;
    failures += t.failures;
  }
  void expect(bool ok, const std::string& what) {
    ++cases;
    if (ok) return;
    if (failures++ == 0) first_failure = what;
  }
};

struct Criterion {
  std::string name;
  double limit_seconds;  // 0: no limit
  std::function<Outcome()> run;
};

unsigned worker_count() {
  if (const char* env = std::getenv("SIGSYM_THREADS"))
    if (std::atoi(env) > 0) return static_cast<unsigned>(std::atoi(env));
  return std::max(1u, std::thread::hardware_concurrency());
}

VerifyOptions base_options() {
  VerifyOptions o;
  o.threads = worker_count();
  return o;
}

std::vector<Field> fields_of(std::initializer_list<int> orders) {
  std::vector<Field> out;
  for (int q : orders) out.push_back(field_of_order(q));
  return out;
}

std::string tag(const Field& f) { return "GF(" + std::to_string(f.order()) + ")"; }

Elem naive_pow(const Field& f, Elem x, long e) {
  Elem r = f.one();
  for (long i = 0; i < e; ++i) r = f.mul(r, x);
  return r;
}

struct Sample {
  SesquiMorphism sigma;
  EpsilonSign eps;
  LabeledMatrix m;
};

Sample draw(const Field& f, std::size_t n, Rng& rng) {
  const auto sig = enumerate_sesqui(f);
  SesquiMorphism s = sig[rng.below(sig.size())];
  const EpsilonSign eps = random_epsilon(f, n, rng);
  LabeledMatrix m = random_sigma_eps_matrix(s, eps, n, rng);
  return {std::move(s), eps, std::move(m)};
}

std::size_t oracle_cut_rank(const LabeledMatrix& m, Subset x) {
  return oracle::rank_by_span(m.field(), m.block(x, x.complement(m.size())));
}

bool oracle_nonsingular(const LabeledMatrix& m, Subset x) {
  return oracle::leibniz_det(m.field(), m.block(x, x)) != m.field().zero();
}

/// Rank-width from every layout with the span-counting cut-rank.
std::size_t oracle_rank_width(const LabeledMatrix& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> cr(std::size_t{1} << n);
  for (std::uint32_t x = 0; x < cr.size(); ++x) cr[x] = oracle_cut_rank(m, Subset(x));
  CutFunction f(n, [&cr](Subset x) { return cr[x.bits()]; });
  std::size_t best = n;
  for (const auto& layout : enumerate_layouts(n)) best = std::min(best, layout_width(f, layout));
  return n == 0 ? 0 : best;
}

bool brute_isomorphic(const LabeledMatrix& a, const LabeledMatrix& b) {
  const std::size_t n = a.size();
  if (n != b.size()) return false;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t x = 0; ok && x < n; ++x)
      for (std::size_t y = 0; ok && y < n; ++y) ok = a(x, y) == b(perm[x], perm[y]);
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

/// Symmetric exchange over every pair of feasible sets, feasibility by the
/// permutation expansion of the determinant.
bool brute_exchange(const LabeledMatrix& m) {
  const std::size_t n = m.size();
  std::vector<bool> feasible(std::size_t{1} << n);
  for (std::uint32_t x = 0; x < feasible.size(); ++x) feasible[x] = oracle_nonsingular(m, Subset(x));
  for (std::uint32_t f = 0; f < feasible.size(); ++f)
    for (std::uint32_t g = 0; g < feasible.size(); ++g) {
      if (!feasible[f] || !feasible[g]) continue;
      for (std::size_t x = 0; x < n; ++x) {
        if (!((f ^ g) >> x & 1u)) continue;
        bool ok = false;
        for (std::size_t y = 0; y < n && !ok; ++y)
          if ((f ^ g) >> y & 1u) ok = feasible[f ^ (1u << x) ^ (1u << y)];
        if (!ok) return false;
      }
    }
  return true;
}

// ---------------------------------------------------------------- criteria

Outcome sesqui_identities() {
  Outcome out;
  VerifyOptions o = base_options();
  o.fields = fields_of({2, 3, 4, 5, 8, 9});
  out.add(check_sesqui_identities(o), "identities");
  out.add(check_sesqui_normal_form(o), "normal form");
  // every enumerated sigma is x -> s * x^(p^j), recomputed by repeated multiplication
  for (const Field& f : o.fields)
    for (const auto& s : enumerate_sesqui(f)) {
      long e = 1;
      for (int i = 0; i < s.frobenius_power(); ++i) e *= f.characteristic();
      bool ok = true;
      for (Elem x : f.elements()) ok = ok && s(x) == f.mul(s.unit(), naive_pow(f, x, e)) && s(s(x)) == x;
      out.expect(ok, tag(f) + " " + s.describe() + " differs from s*x^(p^j)");
    }
  return out;
}

Outcome sesqui_enumeration() {
  Outcome out;
  for (int q : {2, 3, 5, 7}) {
    const Field f = Field::prime(q);
    auto brute = oracle::sesqui_by_bijection(f);
    std::vector<std::vector<Elem>> expected;
    std::vector<Elem> id, minus;
    for (Elem x : f.elements()) {
      id.push_back(x);
      minus.push_back(f.neg(x));
    }
    expected.push_back(id);
    if (q != 2) expected.push_back(minus);
    auto by_code = [](const std::vector<Elem>& a, const std::vector<Elem>& b) {
      return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                          [](Elem x, Elem y) { return x.v < y.v; });
    };
    std::sort(brute.begin(), brute.end(), by_code);
    std::sort(expected.begin(), expected.end(), by_code);
    out.expect(brute == expected, tag(f) + ": bijection search found " + std::to_string(brute.size()));
    std::vector<std::vector<Elem>> structural;
    for (const auto& s : enumerate_sesqui(f)) {
      std::vector<Elem> t;
      for (Elem x : f.elements()) t.push_back(s(x));
      structural.push_back(std::move(t));
    }
    std::sort(structural.begin(), structural.end(), by_code);
    out.expect(structural == expected, tag(f) + ": structural enumeration differs");
  }
  VerifyOptions o = base_options();
  o.fields = fields_of({2, 3, 5, 7});
  out.add(check_sesqui_enumeration(o), "library search");
  return out;
}

Outcome cut_rank_laws() {
  Outcome out;
  VerifyOptions o = base_options();
  o.fields = fields_of({2, 3, 4});
  o.samples = 200;
  o.max_n = 6;
  out.add(check_cut_rank_laws(o), "library");
  for (const Field& f : o.fields) {
    const auto tally = run_indexed(200, o.thread_count(), [&](std::size_t i, Tally& t) {
      Rng rng = Rng::stream(o.seed, "acceptance-cut-rank/" + tag(f), i);
      const auto smp = draw(f, 1 + rng.below(6), rng);
      const std::uint32_t all = (1u << smp.m.size()) - 1;
      std::vector<std::size_t> cr(all + 1);
      bool agree = true;
      for (std::uint32_t x = 0; x <= all; ++x) {
        cr[x] = oracle_cut_rank(smp.m, Subset(x));
        agree = agree && cr[x] == cut_rank(smp.m, Subset(x));
      }
      t.expect(agree, [&] { return "cut-rank differs from span count, sample " + std::to_string(i); });
      bool laws = true;
      for (std::uint32_t x = 0; x <= all && laws; ++x) {
        laws = cr[x] == cr[all ^ x];
        for (std::uint32_t y = 0; y <= all && laws; ++y) laws = cr[x | y] + cr[x & y] <= cr[x] + cr[y];
      }
      t.expect(laws, [&] { return "span-count cut-rank violates a law, sample " + std::to_string(i); });
    });
    out.add(tally, "oracle " + tag(f));
  }
  return out;
}

Outcome connectivity_equals_cut_rank() {
  Outcome out;
  VerifyOptions o = base_options();
  o.samples = 100;
  o.max_n = 5;
  out.add(check_connectivity(o), "library");
  for (const Field& f : o.fields)
    out.add(run_indexed(100, o.thread_count(), [&](std::size_t i, Tally& t) {
              Rng rng = Rng::stream(o.seed, "acceptance-connectivity/" + tag(f), i);
              const auto smp = draw(f, 1 + rng.below(5), rng);
              const auto l = from_matrix(smp.m, smp.sigma, SupplementaryPair::standard(smp.sigma, smp.m.labels(), smp.eps));
              for (std::uint32_t x = 0; x < (1u << smp.m.size()); ++x)
                t.expect(connectivity(l, Subset(x)) == oracle_cut_rank(smp.m, Subset(x)),
                         [&] { return "sample " + std::to_string(i) + " X=" + std::to_string(x); });
            }),
            "oracle " + tag(f));
  return out;
}

Outcome matrix_round_trip() {
  Outcome out;
  VerifyOptions o = base_options();
  o.samples = 100;
  o.max_n = 5;
  o.exhaustive_n = 3;
  out.add(check_matrix_round_trip(o), "round trip");
  return out;
}

Outcome eulerian_chains() {
  Outcome out;
  VerifyOptions o = base_options();
  o.max_n = 5;
  o.exhaustive_n = 3;
  o.search_n = 4;
  out.add(check_eulerian_chain(o), "matrix groups");
  // every lagrangian subspace from the exhaustive enumeration
  out.add(detail::subspace_check(o, "acceptance-eulerian", true,
                                 [](Tally& t, const ChainGroup& l, const std::string& where) {
                                   if (!is_lagrangian(l)) return;
                                   for (const auto& a : detail::projective_points(l.field()))
                                     for (const auto& b : detail::projective_points(l.field())) {
                                       if (!minor_compatible(l.sigma(), a, b)) continue;
                                       t.expect(is_eulerian(l, eulerian_chain(l, a, b)), [&] { return where; });
                                     }
                                 }),
          "lagrangian subspaces");
  out.add(check_special_chains(o), "special chains");
  // special chains against the permutation-expansion determinant
  const Field f2 = Field::prime(2);
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& m : detail::all_symmetric_gf2(n)) {
      const auto s = SesquiMorphism::identity(f2);
      const auto pair = SupplementaryPair::standard(s, m.labels(), {});
      for (std::uint32_t xb = 0; xb < (1u << n); ++xb) {
        Chain c = Chain::zero(m.labels());
        for (std::size_t x = 0; x < n; ++x)
          c.values[x] = (xb >> x & 1u) ? KVector{f2.zero(), f2.one()} : KVector{f2.one(), f2.zero()};
        out.expect(special_eulerian_check(m, s, pair, c).eulerian == oracle_nonsingular(m, Subset(xb)),
                   "GF(2) " + detail::describe_matrix(m) + " X=" + std::to_string(xb));
      }
    }
  return out;
}

Outcome transform_laws() {
  Outcome out;
  VerifyOptions o = base_options();
  o.max_n = 4;
  o.exhaustive_n = 4;
  o.search_n = 4;
  o.samples = 60;
  out.add(check_transform_laws(o), "transforms");
  return out;
}

Outcome minor_matrices() {
  Outcome out;
  VerifyOptions o = base_options();
  o.max_n = 4;
  o.exhaustive_n = 4;
  o.search_n = 4;
  std::uint64_t representable = 0;
  out.add(check_minor_matrices(o, &representable), "search");
  out.expect(representable > 0, "no representable minor was exercised");
  out.note = std::to_string(representable) + " representable minors";
  return out;
}

Outcome tucker() {
  Outcome out;
  VerifyOptions o = base_options();
  o.samples = 100;
  o.max_n = 5;
  out.add(check_tucker(o), "library");
  for (const Field& f : o.fields)
    out.add(run_indexed(60, o.thread_count(), [&](std::size_t i, Tally& t) {
              Rng rng = Rng::stream(o.seed, "acceptance-tucker/" + tag(f), i);
              const auto smp = draw(f, 1 + rng.below(5), rng);
              const std::size_t n = smp.m.size();
              for (std::uint32_t xb = 0; xb < (1u << n); ++xb) {
                const Subset x(xb);
                const Elem dx = oracle::leibniz_det(f, smp.m.block(x, x));
                if (dx == f.zero()) continue;
                const LabeledMatrix p = ppt(smp.m, x);
                for (std::uint32_t zb = 0; zb < (1u << n); ++zb) {
                  const Subset z(zb);
                  const Elem lhs = oracle::leibniz_det(f, p.block(z, z));
                  const Elem rhs = f.div(oracle::leibniz_det(f, smp.m.block(z ^ x, z ^ x)), dx);
                  t.expect(lhs == rhs || lhs == f.neg(rhs), [&] {
                    return "sample " + std::to_string(i) + " X=" + std::to_string(xb) + " Z=" + std::to_string(zb);
                  });
                }
              }
            }),
            "oracle " + tag(f));
  return out;
}

Outcome exchange_axiom() {
  Outcome out;
  VerifyOptions o = base_options();
  o.fields = fields_of({3, 4, 5});
  o.samples = 500;
  o.max_n = 5;
  out.add(check_exchange_axiom(o, 4), "library");
  for (const Field& f : o.fields)
    out.add(run_indexed(500, o.thread_count(), [&](std::size_t i, Tally& t) {
              Rng rng = Rng::stream(o.seed, "acceptance-exchange/" + tag(f), i);
              const auto smp = draw(f, 1 + rng.below(5), rng);
              t.expect(brute_exchange(smp.m), [&] { return "sample " + std::to_string(i); });
            }),
            "oracle " + tag(f));
  return out;
}

Outcome pivot_classes() {
  Outcome out;
  VerifyOptions o = base_options();
  o.max_n = 5;
  o.search_n = 4;
  o.samples = 60;
  out.add(check_pivot_class_width(o, 5, 12), "classes");
  out.add(check_pivot_minor_witness(o), "pivot-minor witnesses");
  // small classes against the layout-enumeration rank-width
  const auto conj = gf4_conjugation();
  for (PivotMode mode : {PivotMode::Loop, PivotMode::LoopFree})
    for (std::size_t bits = 0; bits < (1u << 9); ++bits) {
      const auto d = DirectedGraph::from_bits(3, bits);
      if (mode == PivotMode::LoopFree && !d.is_loop_free()) continue;
      const auto cls = pivot_class(digraph_to_gf4(d), conj, mode);
      const std::size_t w = oracle_rank_width(cls.members.front().graph);
      bool same = true;
      for (const auto& m : cls.members) same = same && oracle_rank_width(m.graph) == w;
      out.expect(same, "class of 3-vertex digraph " + std::to_string(bits));
    }
  return out;
}

Outcome encodings() {
  Outcome out;
  VerifyOptions o = base_options();
  o.search_n = 4;
  o.exhaustive_n = 3;
  out.add(check_gf4_encoding(o), "gf4 round trip");
  out.add(check_quadratic_embedding(o), "quadratic embedding");
  out.add(check_embedding_isomorphism(o), "isomorphism reflection");
  // frozen GF(4) codes: 0 = 0, 1 = 1, a = 2, a^2 = 3
  const std::uint16_t frozen[2][2] = {{0, 3}, {2, 1}};
  const auto q2 = quadratic_extension(Field::prime(2));
  for (int xy = 0; xy < 2; ++xy)
    for (int yx = 0; yx < 2; ++yx) {
      auto d = DirectedGraph::with_size(2);
      if (xy) d.add_arc(0, 1);
      if (yx) d.add_arc(1, 0);
      const auto e = embed_quadratic(d.adjacency(), q2);
      const auto g = digraph_to_gf4(d);
      out.expect(e(0, 1).v == frozen[xy][yx] && g(0, 1).v == frozen[xy][yx] && e(1, 0).v == frozen[yx][xy],
                 "table entry " + std::to_string(xy) + std::to_string(yx));
    }
  // isomorphism reflection by trying every permutation
  for (std::size_t n = 1; n <= 3; ++n) {
    const std::size_t count = std::size_t{1} << (n * n);
    std::vector<LabeledMatrix> plain, embedded;
    for (std::size_t b = 0; b < count; ++b) {
      plain.push_back(DirectedGraph::from_bits(n, b).adjacency());
      embedded.push_back(embed_quadratic(plain.back(), q2));
    }
    out.add(run_indexed(count, o.thread_count(), [&](std::size_t i, Tally& t) {
              for (std::size_t j = 0; j < count; ++j)
                t.expect(brute_isomorphic(plain[i], plain[j]) == brute_isomorphic(embedded[i], embedded[j]),
                         [&] { return "n=" + std::to_string(n) + " pair " + std::to_string(i) + "," + std::to_string(j); });
            }),
            "oracle isomorphism");
  }
  return out;
}

Outcome chain_group_algebra() {
  Outcome out;
  VerifyOptions o = base_options();
  o.max_n = 5;
  o.exhaustive_n = 3;
  o.search_n = 3;
  out.add(check_form_identities(o), "form");
  out.add(check_orthogonal_dimension(o), "orthogonal dimension");
  out.add(check_restriction_duality(o), "restriction duality");
  out.add(check_single_minor_rule(o), "single-vertex minors");
  out.add(check_restriction_dimension(o), "dimension sum");
  out.add(check_minor_closure(o), "minor closure");
  // orthogonal complements counted vector by vector
  for (const Field& f : fields_of({2, 3}))
    for (const auto& s : enumerate_sesqui(f))
      for (std::size_t n = 1; n <= 2; ++n) {
        const auto vectors = oracle::all_vectors(f, 2 * n);
        for (const Dense& basis : oracle::all_subspaces(f, 2 * n)) {
          const ChainGroup l(s, LabeledMatrix::default_labels(n), basis);
          std::size_t count = 0;
          for (const auto& v : vectors) {
            bool orth = true;
            for (std::size_t r = 0; orth && r < basis.rows(); ++r) {
              Elem total = f.zero();
              for (std::size_t x = 0; x < n; ++x) {
                const Elem ua = basis(r, 2 * x), ub = basis(r, 2 * x + 1), va = v[2 * x], vb = v[2 * x + 1];
                total = f.add(total, f.sub(f.mul(f.mul(s(f.one()), ua), s(vb)), f.mul(ub, s(va))));
              }
              orth = total == f.zero();
            }
            count += orth;
          }
          std::size_t expected = 1;
          for (std::size_t i = 0; i < 2 * n - basis.rows(); ++i) expected *= static_cast<std::size_t>(f.order());
          const auto perp = orthogonal(l);
          std::size_t lib = 1;
          for (std::size_t i = 0; i < perp.dim(); ++i) lib *= static_cast<std::size_t>(f.order());
          out.expect(count == expected && lib == count, tag(f) + " " + s.describe() + " n=" + std::to_string(n));
        }
      }
  return out;
}

Outcome width_constants_and_suite() {
  Outcome out;
  out.add(check_width_constants(base_options()), "constants");
  const Field f2 = Field::prime(2);
  auto undirected = [&](std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    LabeledMatrix m(f2, LabeledMatrix::default_labels(n));
    for (auto [u, v] : edges) m(u, v) = m(v, u) = f2.one();
    return m;
  };
  auto cycle = DirectedGraph::with_size(4), path = DirectedGraph::with_size(4);
  for (std::size_t i = 0; i < 4; ++i) cycle.add_arc(i, (i + 1) % 4);
  for (std::size_t i = 0; i + 1 < 4; ++i) path.add_arc(i, i + 1);
  const std::vector<std::pair<LabeledMatrix, std::size_t>> pinned = {
      {undirected(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}), 1},
      {undirected(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}), 2},
      {digraph_to_gf4(cycle), 2},
      {digraph_to_gf4(path), 1},
  };
  for (const auto& [m, w] : pinned) {
    out.expect(oracle_rank_width(m) == w, "layout enumeration disagrees with pinned value");
    out.expect(rank_width(m).width == w, "rank_width disagrees with pinned value");
  }
  VerifyOptions o = base_options();
  const auto start = std::chrono::steady_clock::now();
  const Report r = run_verify(o);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const auto& c : r.checks) {
    Tally t;
    t.cases = c.cases;
    t.failures = c.failures;
    t.first_failure = c.first_failure;
    out.add(t, c.module + "/" + c.name);
  }
  out.expect(seconds < 600, "full suite took " + std::to_string(seconds) + " s");
  char buf[64];
  std::snprintf(buf, sizeof buf, "full suite %.1f s", seconds);
  out.note = buf;
  return out;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"sesqui-morphism identities over GF(2,3,4,5,8,9)", 60, sesqui_identities},
      {"sesqui-morphisms of prime fields by bijection search", 60, sesqui_enumeration},
      {"cut-rank symmetric and submodular, n <= 6", 300, cut_rank_laws},
      {"connectivity equals cut-rank", 0, connectivity_equals_cut_rank},
      {"matrix to chain group round trip", 0, matrix_round_trip},
      {"eulerian chains and special-chain criterion", 0, eulerian_chains},
      {"transformations preserve the chain group, n <= 4", 0, transform_laws},
      {"minor matrices found by pivot-and-sign search, n <= 4", 0, minor_matrices},
      {"principal-minor identity under pivoting", 0, tucker},
      {"non-singular principal sets form a delta-matroid", 0, exchange_axiom},
      {"rank-width constant on pivot classes; pivot-minors", 0, pivot_classes},
      {"digraph and quadratic-extension encodings", 0, encodings},
      {"chain-group linear algebra, exhaustive n <= 3", 0, chain_group_algebra},
      {"pinned rank-width values; full verify suite time", 600, width_constants_and_suite},
  };
  std::printf("seed %llu, %u threads\n", static_cast<unsigned long long>(kDefaultSeed), worker_count());
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.failures = 1;
      r.first_failure = std::string("threw ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit_seconds == 0 || s < c.limit_seconds;
    const bool pass = r.failures == 0 && r.cases > 0 && in_time;
    if (!pass) ++failed;
    std::printf("%s %2zu %-54s cases=%-9llu failures=%-4llu %7.2fs%s%s\n", pass ? "PASS" : "FAIL", i + 1,
                c.name.c_str(), static_cast<unsigned long long>(r.cases), static_cast<unsigned long long>(r.failures),
                s, r.note.empty() ? "" : ("  " + r.note).c_str(), in_time ? "" : "  (over time limit)");
    if (!r.first_failure.empty()) std::printf("     first failure: %s\n", r.first_failure.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
