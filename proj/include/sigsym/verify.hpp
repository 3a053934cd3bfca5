#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "sigsym/chaingroup.hpp"
#include "sigsym/deltamatroid.hpp"
#include "sigsym/field.hpp"
#include "sigsym/graphs.hpp"
#include "sigsym/matrix.hpp"
#include "sigsym/random.hpp"
#include "sigsym/width.hpp"

namespace sigsym {

inline constexpr std::uint64_t kDefaultSeed = 20240917;

/// GF(q) with the canonical modulus, for q a prime power.
inline Field field_of_order(int q) {
  if (q < 2) fail(ErrorKind::InvalidArgument, "field order must be at least 2");
  int p = 2;
  while (q % p != 0) ++p;
  int k = 0;
  int rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1) fail(ErrorKind::InvalidArgument, std::to_string(q) + " is not a prime power");
  return Field::canonical(p, k);
}

struct VerifyOptions {
  std::uint64_t seed = kDefaultSeed;
  /// Largest ground set for sampled cases.
  std::size_t max_n = 5;
  std::vector<Field> fields = {Field::prime(2), Field::prime(3), Field::canonical(2, 2), Field::prime(5)};
  /// Sampled cases per field for each sampled check.
  std::size_t samples = 40;
  /// Largest ground set for exhaustive enumeration (also capped by max_n).
  std::size_t exhaustive_n = 3;
  /// Largest ground set for pivot classes and minor-matrix searches.
  std::size_t search_n = 4;
  /// Worker threads; 0 reads SIGSYM_THREADS and defaults to 1.
  unsigned threads = 0;
  /// Only run checks whose name contains this text.
  std::string filter;

  std::size_t exhaustive_limit() const { return std::min(exhaustive_n, max_n); }
  std::size_t search_limit() const { return std::min(search_n, max_n); }

  unsigned thread_count() const {
    if (threads > 0) return threads;
    if (const char* env = std::getenv("SIGSYM_THREADS")) {
      const int v = std::atoi(env);
      if (v > 0) return static_cast<unsigned>(v);
    }
    return 1;
  }
};

/// Outcome counts for one check.
struct CheckResult {
  std::string module;
  std::string name;
  std::string claim;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::string first_failure;
  double seconds = 0;

  bool ok() const { return failures == 0; }
};

struct Report {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok(); });
  }
  std::uint64_t failures() const {
    std::uint64_t n = 0;
    for (const auto& c : checks) n += c.failures;
    return n;
  }
};

/// Per-case counter; keeps the description of the first failure.
struct Tally {
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::string first_failure;

  template <class Describe>
  void expect(bool ok, Describe&& describe) {
    ++cases;
    if (ok) return;
    if (failures++ == 0) first_failure = describe();
  }

  void merge(const Tally& other) {
    if (failures == 0 && other.failures > 0) first_failure = other.first_failure;
    cases += other.cases;
    failures += other.failures;
  }
};

/// Runs body(i, tally) for i in [0, count) and merges the tallies in index
/// order, so counts and the reported first failure do not depend on the
/// number of threads.
inline Tally run_indexed(std::size_t count, unsigned threads, const std::function<void(std::size_t, Tally&)>& body) {
  std::vector<Tally> parts(count);
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i, parts[i]);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < count; i += workers) body(i, parts[i]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  Tally total;
  for (const auto& p : parts) total.merge(p);
  return total;
}

namespace detail {

/// Any exception thrown by a case counts as a failure of that case.
inline void guarded(Tally& t, const std::function<void()>& body, const std::string& where) {
  try {
    body();
  } catch (const std::exception& e) {
    t.expect(false, [&] { return where + ": threw " + e.what(); });
  }
}

inline std::string field_tag(const Field& f) { return "GF(" + std::to_string(f.order()) + ")"; }

/// One sampled (sigma, eps, M) triple.
struct SymSample {
  SesquiMorphism sigma;
  EpsilonSign eps;
  LabeledMatrix m;
};

inline SymSample random_sym(const Field& f, std::size_t n, Rng& rng) {
  const auto sig = enumerate_sesqui(f);
  SesquiMorphism s = sig[rng.below(sig.size())];
  EpsilonSign eps = random_epsilon(f, n, rng);
  LabeledMatrix m = random_sigma_eps_matrix(s, eps, n, rng);
  return {std::move(s), eps, std::move(m)};
}

inline std::string describe_matrix(const LabeledMatrix& m) {
  std::string s = field_tag(m.field()) + " [";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += "; ";
    for (std::size_t j = 0; j < m.size(); ++j) s += (j ? " " : "") + m.field().format(m(i, j));
  }
  return s + "]";
}

inline std::string describe_sample(const SymSample& smp) {
  return smp.sigma.describe() + ", eps- " + std::to_string(smp.eps.negative.bits()) + ", " + describe_matrix(smp.m);
}

/// Every subspace of F^d, one reduced echelon basis each.
inline std::vector<Dense> all_subspaces(const Field& f, std::size_t d) {
  std::vector<Dense> out;
  const std::size_t q = static_cast<std::size_t>(f.order());
  for (std::uint32_t pivots = 0; pivots < (1u << d); ++pivots) {
    std::vector<std::size_t> piv;
    for (std::size_t c = 0; c < d; ++c)
      if (pivots >> c & 1u) piv.push_back(c);
    // free positions: row r, columns after piv[r] that are not pivots
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t r = 0; r < piv.size(); ++r)
      for (std::size_t c = piv[r] + 1; c < d; ++c)
        if (!(pivots >> c & 1u)) free.emplace_back(r, c);
    std::vector<std::size_t> digits(free.size(), 0);
    while (true) {
      Dense m(piv.size(), d);
      for (std::size_t r = 0; r < piv.size(); ++r) m(r, piv[r]) = f.one();
      for (std::size_t i = 0; i < free.size(); ++i)
        m(free[i].first, free[i].second) = Elem{static_cast<std::uint16_t>(digits[i])};
      out.push_back(std::move(m));
      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == q) digits[i++] = 0;
      if (i == digits.size()) break;
    }
  }
  return out;
}

/// Non-zero vectors of F^2 up to scalars: (1, b) and (0, 1).
inline std::vector<KVector> projective_points(const Field& f) {
  std::vector<KVector> out;
  for (Elem b : f.elements()) out.push_back({f.one(), b});
  out.push_back({f.zero(), f.one()});
  return out;
}

inline std::vector<KVector> all_kvectors(const Field& f) {
  std::vector<KVector> out;
  for (Elem a : f.elements())
    for (Elem b : f.elements()) out.push_back({a, b});
  return out;
}

/// Every (sigma, eps)-symmetric 0/1 matrix over GF(2) on n vertices.
inline std::vector<LabeledMatrix> all_symmetric_gf2(std::size_t n) {
  const Field f2 = Field::prime(2);
  std::vector<LabeledMatrix> out;
  const std::size_t upper = n * (n + 1) / 2;
  for (std::uint32_t bits = 0; bits < (1u << upper); ++bits) {
    LabeledMatrix m(f2, LabeledMatrix::default_labels(n));
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j, ++k)
        if (bits >> k & 1u) m(i, j) = m(j, i) = f2.one();
    out.push_back(std::move(m));
  }
  return out;
}

inline ChainGroup standard_group(const SymSample& s) {
  return from_matrix(s.m, s.sigma, SupplementaryPair::standard(s.sigma, s.m.labels(), s.eps));
}

/// Dimension of (F^2)^V subspaces enumerated exhaustively for this field.
inline std::size_t subspace_enumeration_limit(const Field& f, std::size_t requested) {
  const std::size_t cap = f.order() <= 3 ? 3 : (f.order() <= 5 ? 2 : 1);
  return std::min(requested, cap);
}

/// Cut-rank width by trying every layout.
inline std::size_t width_by_layouts(const CutFunction& f) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (const auto& layout : enumerate_layouts(f.ground_size())) best = std::min(best, layout_width(f, layout));
  return best;
}

}  // namespace detail

using CheckFn = std::function<Tally(const VerifyOptions&)>;

struct CheckEntry {
  std::string module;
  std::string name;
  std::string claim;
  CheckFn run;
};

// ---------------------------------------------------------------- field

inline Tally check_sesqui_normal_form(const VerifyOptions& o) {
  Tally t;
  for (const Field& f : o.fields)
    for (const auto& s : enumerate_sesqui(f)) {
      bool ok = s.normalized(f.one()) == f.one() && s(f.one()) == s.unit();
      for (Elem x : f.elements()) {
        ok = ok && s(s(x)) == x && s(x) == f.mul(s.unit(), s.normalized(x));
        for (Elem y : f.elements())
          ok = ok && s.normalized(f.add(x, y)) == f.add(s.normalized(x), s.normalized(y)) &&
               s.normalized(f.mul(x, y)) == f.mul(s.normalized(x), s.normalized(y));
      }
      t.expect(ok, [&] { return detail::field_tag(f) + " " + s.describe(); });
    }
  return t;
}

inline Tally check_sesqui_identities(const VerifyOptions& o) {
  Tally t;
  for (const Field& f : o.fields)
    for (const auto& s : enumerate_sesqui(f)) {
      const Elem s1 = s.unit();
      auto where = [&](const std::string& what) { return detail::field_tag(f) + " " + s.describe() + ": " + what; };
      for (Elem a : f.elements()) {
        t.expect(s(f.neg(a)) == f.neg(s(a)), [&] { return where("negation at " + f.format(a)); });
        for (long n = 1; n <= 5; ++n) {
          t.expect(s(f.pow(a, n)) == f.div(f.pow(s(a), n), f.pow(s1, n - 1)),
                   [&] { return where("power " + std::to_string(n) + " at " + f.format(a)); });
          if (a != f.zero())
            t.expect(s(f.pow(a, -n)) == f.div(f.pow(s1, n + 1), f.pow(s(a), n)),
                     [&] { return where("inverse power " + std::to_string(n) + " at " + f.format(a)); });
        }
        for (Elem c : f.units())
          t.expect(s(f.div(a, c)) == f.div(f.mul(s1, s(a)), s(c)), [&] { return where("quotient"); });
        for (Elem b : f.elements())
          for (Elem c : f.units())
            t.expect(s(f.div(f.mul(a, b), c)) == f.div(f.mul(s(a), s(b)), s(c)), [&] { return where("ab/c"); });
      }
      // products of up to five factors, all tuples while that stays small
      const std::size_t q = static_cast<std::size_t>(f.order());
      for (std::size_t len = 1; len <= 5; ++len) {
        std::size_t total = 1;
        for (std::size_t i = 0; i < len; ++i) total *= q;
        if (total > 100000) break;
        for (std::size_t code = 0; code < total; ++code) {
          Elem prod = f.one(), images = f.one();
          std::size_t c = code;
          for (std::size_t i = 0; i < len; ++i, c /= q) {
            const Elem a{static_cast<std::uint16_t>(c % q)};
            prod = f.mul(prod, a);
            images = f.mul(images, s(a));
          }
          t.expect(s(prod) == f.div(images, f.pow(s1, static_cast<long>(len) - 1)),
                   [&] { return where("product of " + std::to_string(len) + " factors, tuple " + std::to_string(code)); });
        }
      }
    }
  return t;
}

/// Sesqui-morphisms found by trying every bijection of the field.
inline std::vector<std::vector<Elem>> sesqui_by_search(const Field& f) {
  std::vector<Elem> perm = f.elements();
  std::vector<std::vector<Elem>> out;
  do {
    auto s = [&](Elem x) { return perm[x.v]; };
    bool ok = s(f.one()) != f.zero();
    for (Elem x : f.elements()) ok = ok && s(s(x)) == x;
    if (ok) {
      const Elem inv1 = f.inv(s(f.one()));
      auto tilde = [&](Elem x) { return f.mul(s(x), inv1); };
      for (Elem x : f.elements())
        for (Elem y : f.elements())
          ok = ok && tilde(f.add(x, y)) == f.add(tilde(x), tilde(y)) && tilde(f.mul(x, y)) == f.mul(tilde(x), tilde(y));
    }
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end(), [](Elem a, Elem b) { return a.v < b.v; }));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](Elem x, Elem y) { return x.v < y.v; });
  });
  return out;
}

inline Tally check_sesqui_enumeration(const VerifyOptions& o) {
  Tally t;
  for (const Field& f : o.fields) {
    if (f.order() > 8) continue;
    auto brute = sesqui_by_search(f);
    std::vector<std::vector<Elem>> structural;
    for (const auto& s : enumerate_sesqui(f)) {
      std::vector<Elem> table;
      for (Elem x : f.elements()) table.push_back(s(x));
      structural.push_back(std::move(table));
    }
    std::sort(structural.begin(), structural.end(), [](const auto& a, const auto& b) {
      return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                          [](Elem x, Elem y) { return x.v < y.v; });
    });
    t.expect(brute == structural, [&] {
      return detail::field_tag(f) + ": search found " + std::to_string(brute.size()) + ", enumeration gave " +
             std::to_string(structural.size());
    });
  }
  return t;
}

// ---------------------------------------------------------------- matrix

inline Tally check_det_inverse(const VerifyOptions& o) {
  Tally total;
  for (const Field& f : o.fields)
    total.merge(run_indexed(o.samples, o.thread_count(), [&](std::size_t i, Tally& t) {
      Rng rng = Rng::stream(o.seed, "det-inverse/" + detail::field_tag(f), i);
      const std::size_t n = rng.below(o.max_n + 1);
      Dense a(n, n), b(n, n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
          a(r, c) = rng.sparse_element(f, 0.3);
          b(r, c) = rng.sparse_element(f, 0.3);
        }
      const Elem da = det(f, a);
      t.expect(det(f, multiply(f, a, b)) == f.mul(da, det(f, b)), [&] { return detail::field_tag(f) + " det(AB)"; });
      t.expect((rank(f, a) == n) == (da != f.zero()), [&] { return detail::field_tag(f) + " rank vs det"; });
      const auto inv = inverse(f, a);
      t.expect(inv.has_value() == (da != f.zero()), [&] { return detail::field_tag(f) + " invertibility"; });
      if (inv) t.expect(multiply(f, a, *inv) == Dense::identity(f, n), [&] { return detail::field_tag(f) + " A A^-1"; });
    }));
  return total;
}

inline Tally check_sigma_eps_detection(const VerifyOptions& o) {
  Tally total;
  for (const Field& f : o.fields)
    total.merge(run_indexed(o.samples, o.thread_count(), [&](std::size_t i, Tally& t) {
      Rng rng = Rng::stream(o.seed, "sigma-eps/" + detail::field_tag(f), i);
      const auto smp = detail::random_sym(f, 1 + rng.below(o.max_n), rng);
      const auto eps = sigma_eps_check(smp.m, smp.sigma);
      t.expect(eps && is_sigma_eps_symmetric(smp.m, smp.sigma, *eps), [&] { return detail::describe_sample(smp); });
      t.expect(find_sigma(smp.m).has_value(), [&] { return "find_sigma: " + detail::describe_sample(smp); });
    }));
  return total;
}

inline Tally check_cut_rank_laws(const VerifyOptions& o) {
  Tally total;
  for (const Field& f : o.fields)
    total.merge(run_indexed(o.samples, o.thread_count(), [&](std::size_t i, Tally& t) {
      Rng rng = Rng::stream(o.seed, "cut-rank/" + detail::field_tag(f), i);
      const std::size_t n = 1 + rng.below(std::min<std::size_t>(o.max_n + 1, 6));
      const auto smp = detail::random_sym(f, n, rng);
      const std::uint32_t all = 1u << n;
      std::vector<std::size_t> cr(all);
      for (std::uint32_t x = 0; x < all; ++x) cr[x] = cut_rank(smp.m, Subset(x));
      bool ok = true;
      for (std::uint32_t x = 0; x < all && ok; ++x) {
        ok = cr[x] == cr[(all - 1) ^ x];
        for (std::uint32_t y = 0; y < all && ok; ++y) ok = cr[x | y] + cr[x & y] <= cr[x] + cr[y];
      }
      t.expect(ok, [&] { return detail::describe_sample(smp); });
    }));
  return total;
}

inline Tally check_pivot_transform_blocks(const VerifyOptions& o) {
  Tally total;
  for (const Field& f : o.fields)
    total.merge(run_indexed(o.samples, o.thread_count(), [&](std::size_t i, Tally& t) {
      Rng rng = Rng::stream(o.seed, "ppt/" + detail::field_tag(f), i);
      const std::size_t n = 1 + rng.below(o.max_n);
      const auto smp = detail::random_sym(f, n, rng);
      for (std::uint32_t xb = 0; xb < (1u << n); ++xb) {
        const Subset x(xb);
        if (!nonsingular_principal(smp.m, x)) continue;
        detail::guarded(t, [&] {
          const LabeledMatrix p = ppt(smp.m, x);
          const Subset rest = x.complement(n);
          t.expect(p.block(rest, rest) == schur_complement(smp.m, x).dense(),
                   [&] { return "lower block, X=" + std::to_string(xb) + " " + detail::describe_sample(smp); });
          t.expect(ppt(p, x) == smp.m, [&] { return "involution, X=" + std::to_string(xb) + " " + detail::describe_sample(smp); });
          const LoopPivotParams params{x, rng.subset(n), rng.subset(n), random_scaling_pair(smp.sigma, n, rng)};
          t.expect(sigma_eps_check(loop_pivot_matrix(smp.m, smp.sigma, params), smp.sigma).has_value(),
                   [&] { return "symmetry kept, X=" + std::to_string(xb) + " " + detail::describe_sample(smp); });
        }, detail::describe_sample(smp));
      }
    }));
  return total;
}

inline Tally check_tucker(const VerifyOptions& o) {
  Tally total;
  for (const Field& f : o.fields)
    total.merge(run_indexed(o.samples, o.thread_count(), [&](std::size_t i, Tally& t) {
      Rng rng = Rng::stream(o.seed, "tucker/" + detail::field_tag(f), i);
      const std::size_t n = 1 + rng.below(o.max_n);
      const auto smp = detail::random_sym(f, n, rng);
      for (std::uint32_t xb = 0; xb < (1u << n); ++xb) {
        if (!nonsingular_principal(smp.m, Subset(xb))) continue;
        for (std::uint32_t zb = 0; zb < (1u << n); ++zb)
          t.expect(tucker_check(smp.m, Subset(xb), Subset(zb)), [&] {
            return "X=" + std::to_string(xb) + " Z=" + std::to_string(zb) + " " + detail::describe_sample(smp);
          });
      }
    }));
  return total;
}

inline Tally check_isomorphism(const VerifyOptions& o) {
  Tally total;
  for (const Field& f : o.fields)
    total.merge(run_indexed(o.samples, o.thread_count(), [&](std::size_t i, Tally& t) {
      Rng rng = Rng::stream(o.seed, "iso/" + detail::field_tag(f), i);
      const std::size_t n = 1 + rng.below(o.max_n);
      const auto smp = detail::random_sym(f, n, rng);
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng.engine());
      LabeledMatrix copy(f, smp.m.labels());
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) copy(perm[x], perm[y]) = smp.m(x, y);
      const auto h = matrix_isomorphic(smp.m, copy);
      bool ok = h.has_value();
      for (std::size_t x = 0; ok && x < n; ++x)
        for (std::size_t y = 0; ok && y < n; ++y) ok = copy((*h)[x], (*h)[y]) == smp.m(x, y);
      t.expect(ok, [&] { return detail::describe_sample(smp); });
      const auto back = matrix_isomorphic(copy, smp.m);
      t.expect(back.has_value(), [&] { return "reverse: " + detail::describe_sample(smp); });
    }));
  return total;
}

// ---------------------------------------------------------------- width

inline Tally check_width_dp(const VerifyOptions& o) {
  Tally total;
  for (const Field& f : o.fields)
    total.merge(run_indexed(o.samples, o.thread_count(), [&](std::size_t i, Tally& t) {
      Rng rng = Rng::stream(o.seed, "width/" + detail::field_tag(f), i);
      const std::size_t n = 1 + rng.below(std::min<std::size_t>(o.max_n, 7));
      const auto smp = detail::random_sym(f, n, rng);
      CutFunction cf(n, [&](Subset x) { return cut_rank(smp.m, x); });
      const auto dp = min_width(cf);
      t.expect(dp.width == detail::width_by_layouts(cf), [&] { return "optimum: " + detail::describe_sample(smp); });
      t.expect(layout_width(cf, dp.layout) == dp.width, [&] { return "layout: " + detail::describe_sample(smp); });
    }));
  return total;
}

inline Tally check_width_constants(const VerifyOptions&) {
  Tally t;
  const Field f2 = Field::prime(2);
  auto graph = [&](std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    LabeledMatrix m(f2, LabeledMatrix::default_labels(n));
    for (auto [u, v] : edges) m(u, v) = m(v, u) = f2.one();
    return m;
  };
  auto cycle = DirectedGraph::with_size(4);
  for (std::size_t i = 0; i < 4; ++i) cycle.add_arc(i, (i + 1) % 4);
  auto path = DirectedGraph::with_size(4);
  for (std::size_t i = 0; i + 1 < 4; ++i) path.add_arc(i, i + 1);
  const auto k4 = graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  const auto c5 = graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  t.expect(rank_width(k4).width == 1, [] { return "complete graph on 4 vertices"; });
  t.expect(rank_width(c5).width == 2, [] { return "5-cycle"; });
  t.expect(rank_width(cycle).width == 2, [] { return "directed 4-cycle"; });
  t.expect(rank_width(path).width == 1, [] { return "directed 4-path"; });
  return t;
}

// ---------------------------------------------------------------- chaingroup

inline Tally check_form_identities(const VerifyOptions& o) {
  Tally t;
  for (const Field& f : o.fields) {
    if (f.order() > 9) continue;
    const auto vs = detail::all_kvectors(f);
    for (const auto& s : enumerate_sesqui(f)) {
      auto where = [&](const std::string& w) { return detail::field_tag(f) + " " + s.describe() + ": " + w; };
      const Elem s1 = s.unit();
      for (const auto& u : vs) {
        bool left = false, right = false;
        for (const auto& v : vs) {
          const Elem buv = b_sigma(s, u, v);
          left = left || buv != f.zero();
          right = right || b_sigma(s, v, u) != f.zero();
          t.expect(s(buv) == f.neg(f.div(b_sigma(s, v, u), f.mul(s1, s1))), [&] { return where("conjugate symmetry"); });
          for (Elem c : f.elements()) {
            t.expect(b_sigma(s, scale(f, c, u), v) == f.mul(c, buv), [&] { return where("left linearity"); });
            t.expect(b_sigma(s, u, scale(f, c, v)) == f.mul(buv, s.normalized(c)), [&] { return where("right semilinearity"); });
          }
          for (const auto& w : vs) {
            const KVector vw{f.add(v.a, w.a), f.add(v.b, w.b)};
            t.expect(b_sigma(s, u, vw) == f.add(buv, b_sigma(s, u, w)), [&] { return where("right additivity"); });
            t.expect(b_sigma(s, vw, u) == f.add(b_sigma(s, v, u), b_sigma(s, w, u)), [&] { return where("left additivity"); });
          }
          if (!u.is_zero() && b_sigma(s, u, u) == f.zero() && buv == f.zero())
            t.expect(parallel(f, u, v), [&] { return where("orthogonal to an isotropic vector but not parallel"); });
        }
        if (!u.is_zero()) t.expect(left && right, [&] { return where("degenerate vector"); });
      }
    }
  }
  return t;
}

namespace detail {

/// The chain-group laws that hold for every subspace L.
inline void subspace_laws(Tally& t, const ChainGroup& l, const std::string& where) {
  const std::size_t n = l.ground_size();
  const ChainGroup perp = orthogonal(l);
  t.expect(l.dim() + perp.dim() == 2 * n, [&] { return "dimension sum: " + where; });
  t.expect(orthogonal(perp) == l, [&] { return "double orthogonal: " + where; });
  if (is_isotropic(l)) t.expect(l.dim() <= n, [&] { return "isotropic bound: " + where; });
  if (is_lagrangian(l)) t.expect(perp == l, [&] { return "lagrangian self-orthogonal: " + where; });
}

inline void restriction_laws(Tally& t, const ChainGroup& l, const std::string& where) {
  const std::size_t n = l.ground_size();
  const ChainGroup perp = orthogonal(l);
  for (std::uint32_t xb = 0; xb < (1u << n); ++xb) {
    const Subset x(xb);
    t.expect(orthogonal(restrict(l, x)) == confine(perp, x), [&] { return "X=" + std::to_string(xb) + ": " + where; });
  }
}

inline void restriction_dimension(Tally& t, const ChainGroup& l, const std::string& where) {
  const std::size_t n = l.ground_size();
  for (std::uint32_t xb = 0; xb < (1u << n); ++xb) {
    const Subset x(xb);
    t.expect(restrict(l, x).dim() + confine(l, x.complement(n)).dim() == l.dim(),
             [&] { return "X=" + std::to_string(xb) + ": " + where; });
  }
}

/// dim of L<gamma>x against membership of x^gamma in L and L-perp, for
/// isotropic gamma.
inline void single_minor_rule(Tally& t, const ChainGroup& l, const std::string& where) {
  const Field& f = l.field();
  const ChainGroup perp = orthogonal(l);
  for (std::size_t v = 0; v < l.ground_size(); ++v)
    for (const auto& g : projective_points(f)) {
      if (b_sigma(l.sigma(), g, g) != f.zero()) continue;
      const Chain xg = Chain::unit(l.ground(), v, g);
      const bool in_l = l.contains(xg), in_perp = perp.contains(xg);
      const std::size_t d = dim_after_single_minor(l, g, v);
      std::size_t expected = l.dim() - 1;
      if (in_perp && !in_l) expected = l.dim();
      if (in_l && !in_perp) expected = l.dim() - 2;
      t.expect(d == expected, [&] { return "vertex " + std::to_string(v) + ": " + where; });
    }
}

/// Minors of an isotropic group by every compatible (alpha, beta) up to
/// scalars and every disjoint X, Y.
inline void minor_closure(Tally& t, const ChainGroup& l, const std::string& where,
                          bool all_pairs = true) {
  const Field& f = l.field();
  const SesquiMorphism& s = l.sigma();
  const std::size_t n = l.ground_size();
  const bool lagrangian = is_lagrangian(l);
  std::vector<std::pair<KVector, KVector>> pairs;
  if (all_pairs) {
    for (const auto& a : projective_points(f))
      for (const auto& b : projective_points(f))
        if (minor_compatible(s, a, b)) pairs.emplace_back(a, b);
  } else {
    pairs.emplace_back(KVector{f.one(), f.zero()}, KVector{f.zero(), s.unit()});
  }
  for (const auto& [alpha, beta] : pairs)
    for (std::uint32_t xb = 0; xb < (1u << n); ++xb)
      for (std::uint32_t yb = 0; yb < (1u << n); ++yb) {
        if (xb & yb) continue;
        const ChainGroup m = double_minor(l, alpha, beta, Subset(xb), Subset(yb));
        auto at = [&] { return "X=" + std::to_string(xb) + " Y=" + std::to_string(yb) + ": " + where; };
        t.expect(is_isotropic(m), [&] { return "isotropic " + at(); });
        t.expect(m.ground_size() - std::min(m.dim(), m.ground_size()) <= n - l.dim(), [&] { return "defect " + at(); });
        if (lagrangian) t.expect(is_lagrangian(m), [&] { return "lagrangian " + at(); });
      }
}

inline std::string group_tag(const ChainGroup& l, std::size_t index) {
  return field_tag(l.field()) + " " + l.sigma().describe() + " n=" + std::to_string(l.ground_size()) + " #" +
         std::to_string(index);
}

inline ChainGroup random_group(const SesquiMorphism& s, std::size_t n, Rng& rng) {
  const std::size_t k = rng.below(2 * n + 1);
  Dense rows(k, 2 * n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = 0; c < 2 * n; ++c) rows(i, c) = rng.sparse_element(s.field(), 0.3);
  return ChainGroup(s, LabeledMatrix::default_labels(n), std::move(rows));
}

/// A random isotropic group: a random subset of the basis of a lagrangian
/// matrix group.
inline ChainGroup random_isotropic(const Field& f, std::size_t n, Rng& rng) {
  const auto smp = random_sym(f, n, rng);
  const ChainGroup full = standard_group(smp);
  std::vector<Chain> some;
  for (const auto& c : full.chains())
    if (rng.chance(0.6)) some.push_back(c);
  return ChainGroup::span(smp.sigma, full.ground(), some);
}

/// Runs law(tally, L, tag) on every subspace (exhaustive part) and on
/// seeded random groups (sampled part).
inline Tally subspace_check(const VerifyOptions& o, const std::string& tag, bool isotropic_only,
                            const std::function<void(Tally&, const ChainGroup&, const std::string&)>& law) {
  Tally total;
  for (const Field& f : o.fields) {
    for (const auto& s : enumerate_sesqui(f)) {
      const std::size_t lim = subspace_enumeration_limit(f, o.exhaustive_limit());
      for (std::size_t n = 1; n <= lim; ++n) {
        const auto spaces = all_subspaces(f, 2 * n);
        total.merge(run_indexed(spaces.size(), o.thread_count(), [&](std::size_t i, Tally& t) {
          const ChainGroup l(s, LabeledMatrix::default_labels(n), spaces[i]);
          if (isotropic_only && !is_isotropic(l)) return;
          const std::string where = "all subspaces " + group_tag(l, i);
          guarded(t, [&] { law(t, l, where); }, where);
        }));
      }
    }
    total.merge(run_indexed(o.samples, o.thread_count(), [&](std::size_t i, Tally& t) {
      Rng rng = Rng::stream(o.seed, tag + "/" + field_tag(f), i);
      const std::size_t n = 1 + rng.below(o.max_n);
      const auto sig = enumerate_sesqui(f);
      const ChainGroup l =
          isotropic_only ? random_isotropic(f, n, rng) : random_group(sig[rng.below(sig.size())], n, rng);
      const std::string where = "sample " + group_tag(l, i);
      guarded(t, [&] { law(t, l, where); }, where);
    }));
  }
  return total;
}

/// Runs body on each sampled matrix and, exhaustively, on every symmetric
/// GF(2) matrix up to `gf2_n` vertices (when GF(2) is among the fields).
inline Tally matrix_check(const VerifyOptions& o, const std::string& tag, std::size_t sample_n, std::size_t gf2_n,
                          const std::function<void(Tally&, const SymSample&, const std::string&)>& body) {
  Tally total;
  for (const Field& f : o.fields) {
    if (f.order() == 2)
      for (std::size_t n = 1; n <= gf2_n; ++n) {
        const auto all = all_symmetric_gf2(n);
        total.merge(run_indexed(all.size(), o.thread_count(), [&](std::size_t i, Tally& t) {
          const SymSample smp{SesquiMorphism::identity(f), EpsilonSign{}, all[i]};
          const std::string where = "all GF(2) " + describe_matrix(smp.m);
          guarded(t, [&] { body(t, smp, where); }, where);
        }));
      }
    total.merge(run_indexed(o.samples, o.thread_count(), [&](std::size_t i, Tally& t) {
      Rng rng = Rng::stream(o.seed, tag + "/" + field_tag(f), i);
      const auto smp = random_sym(f, 1 + rng.below(sample_n), rng);
      const std::string where = "sample " + describe_sample(smp);
      guarded(t, [&] { body(t, smp, where); }, where);
    }));
  }
  return total;
}

}  // namespace detail

inline Tally check_orthogonal_dimension(const VerifyOptions& o) {
  return detail::subspace_check(o, "orthogonal", false, detail::subspace_laws);
}

inline Tally check_restriction_duality(const VerifyOptions& o) {
  return detail::subspace_check(o, "restriction-duality", false, detail::restriction_laws);
}

inline Tally check_restriction_dimension(const VerifyOptions& o) {
  return detail::subspace_check(o, "restriction-dimension", false, detail::restriction_dimension);
}

inline Tally check_single_minor_rule(const VerifyOptions& o) {
  return detail::subspace_check(o, "single-minor", true, detail::single_minor_rule);
}

inline Tally check_minor_closure(const VerifyOptions& o) {
  Tally t = detail::subspace_check(o, "minor-closure", true,
                                   [](Tally& tl, const ChainGroup& l, const std::string& w) { detail::minor_closure(tl, l, w); });
  // minors of matrix groups up to the search size
  VerifyOptions mo = o;
  t.merge(detail::matrix_check(mo, "minor-closure-matrix", o.search_limit(), std::min<std::size_t>(o.search_limit(), 3),
                               [](Tally& tl, const detail::SymSample& smp, const std::string& w) {
                                 detail::minor_closure(tl, detail::standard_group(smp), w);
                               }));
  return t;
}

inline Tally check_connectivity(const VerifyOptions& o) {
  return detail::matrix_check(o, "connectivity", o.max_n, o.exhaustive_limit(),
                              [](Tally& t, const detail::SymSample& smp, const std::string& where) {
                                const ChainGroup l = detail::standard_group(smp);
                                const std::size_t n = smp.m.size();
                                std::vector<std::size_t> lam(1u << n);
                                bool equal = true;
                                for (std::uint32_t x = 0; x < (1u << n); ++x) {
                                  lam[x] = connectivity(l, Subset(x));
                                  equal = equal && lam[x] == cut_rank(smp.m, Subset(x));
                                }
                                t.expect(equal, [&] { return "equals cut-rank: " + where; });
                                bool laws = true;
                                const std::uint32_t all = (1u << n) - 1;
                                for (std::uint32_t x = 0; x <= all && laws; ++x) {
                                  laws = lam[x] == lam[all ^ x];
                                  for (std::uint32_t y = 0; y <= all && laws; ++y)
                                    laws = lam[x | y] + lam[x & y] <= lam[x] + lam[y];
                                }
                                t.expect(laws, [&] { return "symmetric submodular: " + where; });
                              });
}

inline Tally check_matrix_round_trip(const VerifyOptions& o) {
  return detail::matrix_check(o, "round-trip", o.max_n, o.exhaustive_limit(),
                              [](Tally& t, const detail::SymSample& smp, const std::string& where) {
                                const auto pair = SupplementaryPair::standard(smp.sigma, smp.m.labels(), smp.eps);
                                const ChainGroup l = from_matrix(smp.m, smp.sigma, pair);
                                t.expect(is_lagrangian(l), [&] { return "lagrangian: " + where; });
                                t.expect(to_matrix(l, pair) == smp.m, [&] { return "identity: " + where; });
                              });
}

inline Tally check_eulerian_chain(const VerifyOptions& o) {
  return detail::matrix_check(o, "eulerian", o.max_n, o.exhaustive_limit(),
                              [](Tally& t, const detail::SymSample& smp, const std::string& where) {
                                const Field& f = smp.m.field();
                                const ChainGroup l = detail::standard_group(smp);
                                for (const auto& a : detail::projective_points(f))
                                  for (const auto& b : detail::projective_points(f)) {
                                    if (!minor_compatible(smp.sigma, a, b)) continue;
                                    const Chain e = eulerian_chain(l, a, b);
                                    t.expect(is_eulerian(l, e), [&] { return where; });
                                    bool values = true;
                                    for (std::size_t x = 0; x < e.size(); ++x)
                                      values = values && (parallel(f, e[x], a) || parallel(f, e[x], b));
                                    t.expect(values, [&] { return "values in span of alpha, beta: " + where; });
                                  }
                              });
}

inline Tally check_special_chains(const VerifyOptions& o) {
  return detail::matrix_check(o, "special", o.search_limit(), o.search_limit(),
                              [](Tally& t, const detail::SymSample& smp, const std::string& where) {
                                const Field& f = smp.m.field();
                                const std::size_t n = smp.m.size();
                                const auto pair = SupplementaryPair::standard(smp.sigma, smp.m.labels(), smp.eps);
                                for (std::uint32_t xb = 0; xb < (1u << n); ++xb) {
                                  Chain c = Chain::zero(smp.m.labels());
                                  for (std::size_t x = 0; x < n; ++x)
                                    c.values[x] = (xb >> x & 1u) ? KVector{f.zero(), f.one()} : KVector{f.one(), f.zero()};
                                  const auto r = special_eulerian_check(smp.m, smp.sigma, pair, c);
                                  t.expect(r.support == Subset(xb) && r.eulerian == r.nonsingular_block,
                                           [&] { return "X=" + std::to_string(xb) + ": " + where; });
                                }
                              });
}

inline Tally check_transform_laws(const VerifyOptions& o) {
  return detail::matrix_check(
      o, "transforms", o.search_limit(), o.exhaustive_limit(),
      [&o](Tally& t, const detail::SymSample& smp, const std::string& where) {
        const std::size_t n = smp.m.size();
        const Field& f = smp.m.field();
        const auto pair = SupplementaryPair::standard(smp.sigma, smp.m.labels(), smp.eps);
        const ChainGroup l = from_matrix(smp.m, smp.sigma, pair);
        auto same = [&](const Representation& r, const std::string& what) {
          t.expect(r.pair.is_valid(smp.sigma) && from_matrix(r.matrix, smp.sigma, r.pair) == l,
                   [&] { return what + ": " + where; });
        };
        for (std::uint32_t xb = 0; xb < (1u << n); ++xb) {
          const Subset x(xb);
          if (nonsingular_principal(smp.m, x)) same(transform_ppt(smp.sigma, pair, smp.m, x), "pivot X=" + std::to_string(xb));
          same(transform_sign(smp.sigma, pair, smp.m, x, SignSide::Left), "left signs Z=" + std::to_string(xb));
          same(transform_sign(smp.sigma, pair, smp.m, x, SignSide::Right), "right signs Z=" + std::to_string(xb));
        }
        // every single-vertex scaling, and one random full scaling
        for (std::size_t v = 0; v < n; ++v)
          for (Elem p : f.units())
            same(transform_scale(smp.sigma, pair, smp.m, ScalingPair::single(smp.sigma, n, v, p)), "scaling");
        Rng rng = Rng::stream(o.seed, "transforms-scaling/" + where, 0);
        same(transform_scale(smp.sigma, pair, smp.m, random_scaling_pair(smp.sigma, n, rng)), "random scaling");
        same(clear_diagonal(smp.sigma, pair, smp.m), "diagonal clearing");
      });
}

/// Minor-matrix search over every disjoint (X, Y) and every sign function
/// of the minor. Reports representable minors in `representable` if given.
inline Tally check_minor_matrices(const VerifyOptions& o, std::uint64_t* representable = nullptr) {
  std::atomic<std::uint64_t> count{0};
  Tally t = detail::matrix_check(
      o, "minor-matrix", o.search_limit(), std::min(o.search_limit(), o.exhaustive_limit()),
      [&count](Tally& tl, const detail::SymSample& smp, const std::string& where) {
        const Field& f = smp.m.field();
        const std::size_t n = smp.m.size();
        for (std::uint32_t xb = 0; xb < (1u << n); ++xb)
          for (std::uint32_t yb = 0; yb < (1u << n); ++yb) {
            if (xb & yb) continue;
            const std::size_t nm = n - Subset(xb | yb).size();
            for (std::uint32_t eb = 0; eb < (1u << nm); ++eb) {
              if (f.characteristic() == 2 && eb != 0) continue;
              const auto r = minor_matrix_witness(smp.m, smp.sigma, smp.eps, Subset(xb), Subset(yb), EpsilonSign{Subset(eb)});
              if (!r.representable) continue;
              ++count;
              tl.expect(r.witness.has_value() && r.predicted_signs_work, [&] {
                return "X=" + std::to_string(xb) + " Y=" + std::to_string(yb) + " eps'=" + std::to_string(eb) + ": " + where;
              });
            }
          }
      });
  if (representable) *representable = count.load();
  return t;
}

// ---------------------------------------------------------------- graphs

inline Tally check_gf4_encoding(const VerifyOptions& o) {
  const std::size_t lim = std::min<std::size_t>(o.search_limit(), 4);
  Tally total;
  const auto conj = gf4_conjugation();
  for (std::size_t n = 0; n <= lim; ++n) {
    const std::size_t count = std::size_t{1} << (n * n);
    total.merge(run_indexed(count, o.thread_count(), [&](std::size_t bits, Tally& t) {
      const auto g = DirectedGraph::from_bits(n, bits);
      const auto m = digraph_to_gf4(g);
      t.expect(is_sigma_eps_symmetric(m, conj, {}) && gf4_to_digraph(m) == g,
               [&] { return "n=" + std::to_string(n) + " arcs=" + std::to_string(bits); });
    }));
  }
  return total;
}

inline Tally check_quadratic_embedding(const VerifyOptions& o) {
  Tally t;
  // over GF(2): m(x,y) = l(x,y) omega + l(y,x) omega^2 with omega = a
  const Field f2 = Field::prime(2);
  const auto q2 = quadratic_extension(f2);
  const std::uint16_t table[2][2] = {{0, 3}, {2, 1}};
  for (int l_xy = 0; l_xy < 2; ++l_xy)
    for (int l_yx = 0; l_yx < 2; ++l_yx) {
      LabeledMatrix g(f2, {"x", "y"});
      g(0, 1) = Elem{static_cast<std::uint16_t>(l_xy)};
      g(1, 0) = Elem{static_cast<std::uint16_t>(l_yx)};
      const auto e = embed_quadratic(g, q2);
      t.expect(e(0, 1).v == table[l_xy][l_yx] && e(1, 0).v == table[l_yx][l_xy],
               [&] { return "GF(2) table entry " + std::to_string(l_xy) + std::to_string(l_yx); });
    }
  for (const Field& f : o.fields) {
    if (f.order() * f.order() > static_cast<int>(kMaxFieldOrder)) continue;
    const auto q = quadratic_extension(f);
    t.merge(run_indexed(o.samples, o.thread_count(), [&](std::size_t i, Tally& tl) {
      Rng rng = Rng::stream(o.seed, "embed/" + detail::field_tag(f), i);
      const std::size_t n = 1 + rng.below(o.max_n);
      LabeledMatrix g(f, LabeledMatrix::default_labels(n));
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) g(x, y) = rng.sparse_element(f, 0.4);
      const auto e = embed_quadratic(g, q);
      tl.expect(is_sigma_eps_symmetric(e, q.conjugation, {}), [&] { return "symmetric: " + detail::describe_matrix(g); });
      // entries can be decoded back: {omega, omega^q} is a basis
      bool decodes = true;
      for (std::size_t x = 0; x < n && decodes; ++x)
        for (std::size_t y = 0; y < n && decodes; ++y) {
          std::size_t hits = 0;
          for (Elem a : f.elements())
            for (Elem b : f.elements())
              if (q.extension.add(q.extension.mul(q.embed[a.v], q.omega), q.extension.mul(q.embed[b.v], q.omega_q)) == e(x, y))
                hits += (a == g(x, y) && b == g(y, x)) ? 1 : 100;
          decodes = hits == 1;
        }
      tl.expect(decodes, [&] { return "decodes: " + detail::describe_matrix(g); });
    }));
  }
  return t;
}

inline Tally check_embedding_isomorphism(const VerifyOptions& o) {
  const std::size_t lim = std::min<std::size_t>(o.exhaustive_limit(), 3);
  Tally total;
  const Field f2 = Field::prime(2);
  const auto q2 = quadratic_extension(f2);
  for (std::size_t n = 1; n <= lim; ++n) {
    const std::size_t count = std::size_t{1} << (n * n);
    std::vector<LabeledMatrix> plain, embedded;
    for (std::size_t bits = 0; bits < count; ++bits) {
      plain.push_back(DirectedGraph::from_bits(n, bits).adjacency());
      embedded.push_back(embed_quadratic(plain.back(), q2));
    }
    total.merge(run_indexed(count, o.thread_count(), [&](std::size_t i, Tally& t) {
      for (std::size_t j = 0; j < count; ++j) {
        const bool a = matrix_isomorphic(plain[i], plain[j]).has_value();
        const bool b = matrix_isomorphic(embedded[i], embedded[j]).has_value();
        t.expect(a == b, [&] { return "n=" + std::to_string(n) + " pair " + std::to_string(i) + "," + std::to_string(j); });
      }
    }));
  }
  return total;
}

namespace detail {

/// Rank-width is the same on every member of the class of g; each member
/// is (sigma, eps)-symmetric and, in loop-free mode, loop-free.
inline void pivot_class_laws(Tally& t, const PivotClass& cls, PivotMode mode, const std::string& where) {
  const std::size_t w = rank_width(cls.members.front().graph).width;
  for (std::size_t i = 0; i < cls.size(); ++i) {
    const auto& g = cls.members[i].graph;
    t.expect(find_sigma(g).has_value(), [&] { return "member symmetric: " + where; });
    if (mode == PivotMode::LoopFree) t.expect(is_loop_free(g), [&] { return "member loop-free: " + where; });
    t.expect(rank_width(g).width == w, [&] { return "member " + std::to_string(i) + " width: " + where; });
  }
}

}  // namespace detail

/// Exhaustive over directed graphs up to the search size (loop-free ones
/// for loop-free mode), one class per isomorphism class reached, plus
/// seeded samples one size larger.
inline Tally check_pivot_class_width(const VerifyOptions& o, std::size_t sample_n = 0, std::size_t samples = 0) {
  Tally total;
  const auto conj = gf4_conjugation();
  const std::size_t lim = std::min<std::size_t>(o.search_limit(), 4);
  for (PivotMode mode : {PivotMode::Loop, PivotMode::LoopFree}) {
    const std::string mtag = mode == PivotMode::Loop ? "loop" : "loop-free";
    for (std::size_t n = 1; n <= lim; ++n) {
      std::unordered_set<std::string> covered;
      const std::size_t count = std::size_t{1} << (n * n);
      for (std::size_t bits = 0; bits < count; ++bits) {
        const auto d = DirectedGraph::from_bits(n, bits);
        if (mode == PivotMode::LoopFree && !d.is_loop_free()) continue;
        const auto g = digraph_to_gf4(d);
        const auto key = canonical_form(g);
        if (covered.count(std::string(key.begin(), key.end()))) continue;
        const std::string where = mtag + " n=" + std::to_string(n) + " arcs=" + std::to_string(bits);
        detail::guarded(total, [&] {
          const auto cls = pivot_class(g, conj, mode);
          total.expect(!cls.truncated, [&] { return "class truncated: " + where; });
          for (const auto& m : cls.members) covered.insert(std::string(m.key.begin(), m.key.end()));
          detail::pivot_class_laws(total, cls, mode, where);
        }, where);
      }
    }
    if (samples == 0) continue;
    total.merge(run_indexed(samples, o.thread_count(), [&](std::size_t i, Tally& t) {
      Rng rng = Rng::stream(o.seed, "pivot-class/" + mtag, i);
      auto d = DirectedGraph::with_size(sample_n);
      for (std::size_t u = 0; u < sample_n; ++u)
        for (std::size_t v = 0; v < sample_n; ++v)
          if ((u != v || mode == PivotMode::Loop) && rng.chance(0.3)) d.add_arc(u, v);
      const std::string where = mtag + " sample " + std::to_string(i);
      detail::guarded(t, [&] {
        const auto cls = pivot_class(digraph_to_gf4(d), conj, mode, {sample_n, 5, 200000});
        t.expect(!cls.truncated, [&] { return "class truncated: " + where; });
        detail::pivot_class_laws(t, cls, mode, where);
      }, where);
    }));
  }
  // F*-graphs over the small fields
  for (const Field& f : o.fields) {
    if (f.order() > 5) continue;
    total.merge(run_indexed(o.samples, o.thread_count(), [&](std::size_t i, Tally& t) {
      Rng rng = Rng::stream(o.seed, "pivot-class-fields/" + detail::field_tag(f), i);
      const std::size_t n = 1 + rng.below(std::min<std::size_t>(lim, 3));
      auto smp = detail::random_sym(f, n, rng);
      const PivotMode mode = rng.chance(0.5) ? PivotMode::Loop : PivotMode::LoopFree;
      if (mode == PivotMode::LoopFree) smp.m = with_zero_diagonal(smp.m);
      const std::string where = "sample " + detail::describe_sample(smp);
      detail::guarded(t, [&] {
        const auto cls = pivot_class(smp.m, smp.sigma, mode);
        if (cls.truncated) return;
        detail::pivot_class_laws(t, cls, mode, where);
      }, where);
    }));
  }
  return total;
}

/// pivot_minor_check witnesses replay and never increase rank-width.
inline Tally check_pivot_minor_witness(const VerifyOptions& o) {
  const auto conj = gf4_conjugation();
  const std::size_t lim = std::min<std::size_t>(o.search_limit(), 4);
  return run_indexed(o.samples * 2, o.thread_count(), [&](std::size_t i, Tally& t) {
    Rng rng = Rng::stream(o.seed, "pivot-minor", i);
    const PivotMode mode = i % 2 ? PivotMode::Loop : PivotMode::LoopFree;
    auto random_digraph = [&](std::size_t n) {
      auto d = DirectedGraph::with_size(n);
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
          if ((u != v || mode == PivotMode::Loop) && rng.chance(0.35)) d.add_arc(u, v);
      return digraph_to_gf4(d);
    };
    const std::size_t ng = 1 + rng.below(lim);
    const auto g = random_digraph(ng);
    const auto h = random_digraph(1 + rng.below(ng));
    const std::string where = detail::describe_matrix(h) + " in " + detail::describe_matrix(g);
    detail::guarded(t, [&] {
      const auto w = pivot_minor_check(h, g, conj, mode);
      if (!w) return;
      FStarGraph replay = g;
      for (const auto& mv : w->trace) replay = apply_move(replay, conj, mv, mode);
      t.expect(replay == w->member, [&] { return "trace replays: " + where; });
      bool embeds = true;
      for (std::size_t x = 0; x < h.size(); ++x)
        for (std::size_t y = 0; y < h.size(); ++y) embeds = embeds && w->member(w->embedding[x], w->embedding[y]) == h(x, y);
      t.expect(embeds, [&] { return "induced copy: " + where; });
      t.expect(rank_width(h).width <= rank_width(g).width, [&] { return "rank-width: " + where; });
    }, where);
  });
}

// ---------------------------------------------------------------- deltamatroid

inline Tally check_exchange_axiom(const VerifyOptions& o, std::size_t gf2_n = 0) {
  const std::size_t exhaustive = gf2_n ? gf2_n : o.search_limit();
  Tally total;
  const Field f2 = Field::prime(2);
  const auto id = SesquiMorphism::identity(f2);
  // all 0/1 matrices over GF(2), filtered by symmetry
  for (std::size_t n = 1; n <= exhaustive; ++n) {
    const std::size_t count = std::size_t{1} << (n * n);
    total.merge(run_indexed(count, o.thread_count(), [&](std::size_t bits, Tally& t) {
      LabeledMatrix m(f2, LabeledMatrix::default_labels(n));
      for (std::size_t k = 0; k < n * n; ++k)
        if (bits >> k & 1u) m(k / n, k % n) = f2.one();
      if (!sigma_eps_check(m, id)) return;
      t.expect(!sea_check(delta_matroid_of(m)).has_value(), [&] { return detail::describe_matrix(m); });
    }));
  }
  for (const Field& f : o.fields) {
    if (f.order() == 2) continue;
    total.merge(run_indexed(o.samples, o.thread_count(), [&](std::size_t i, Tally& t) {
      Rng rng = Rng::stream(o.seed, "exchange/" + detail::field_tag(f), i);
      const auto smp = detail::random_sym(f, 1 + rng.below(o.max_n), rng);
      t.expect(!sea_check(delta_matroid_of(smp.m)).has_value(), [&] { return detail::describe_sample(smp); });
    }));
  }
  return total;
}

inline Tally check_twists(const VerifyOptions& o) {
  return detail::matrix_check(o, "twists", o.max_n, std::min<std::size_t>(o.exhaustive_limit(), 3),
                              [&o](Tally& t, const detail::SymSample& smp, const std::string& where) {
                                const std::size_t n = smp.m.size();
                                const auto d = delta_matroid_of(smp.m);
                                Rng rng = Rng::stream(o.seed, "twists/" + where, 0);
                                for (Subset x : d.feasible()) {
                                  const LoopPivotParams params{x, rng.subset(n), rng.subset(n),
                                                               random_scaling_pair(smp.sigma, n, rng)};
                                  const auto dp = delta_matroid_of(loop_pivot_matrix(smp.m, smp.sigma, params));
                                  t.expect(dp == twist(d, x), [&] { return "X=" + std::to_string(x.bits()) + ": " + where; });
                                  const auto e = equivalent(dp, d);
                                  t.expect(e && twist(d, *e) == dp, [&] { return "equivalence: " + where; });
                                }
                              });
}

inline Tally check_branch_width_bound(const VerifyOptions& o) {
  return detail::matrix_check(o, "bw-bound", std::min<std::size_t>(o.search_limit(), 4), 0,
                              [](Tally& t, const detail::SymSample& smp, const std::string& where) {
                                const std::size_t bound = branch_width_bound(smp.m);
                                t.expect(bound <= rank_width(smp.m).width, [&] { return "at most rank-width: " + where; });
                                const auto d = delta_matroid_of(smp.m);
                                for (Subset x : d.feasible()) {
                                  const auto mp = loop_pivot_matrix(smp.m, smp.sigma, {x, {}, {}, std::nullopt});
                                  t.expect(branch_width_bound(mp) == bound, [&] { return "invariant: " + where; });
                                }
                              });
}

// ---------------------------------------------------------------- suite

inline std::vector<CheckEntry> all_checks() {
  return {
      {"field", "sesqui-normal-form", "every enumerated sigma is an involution with automorphic normalization",
       check_sesqui_normal_form},
      {"field", "sesqui-identities", "negation, power, inverse-power, quotient and product rules of sigma",
       check_sesqui_identities},
      {"field", "sesqui-enumeration-complete", "the structural enumeration equals a search over all bijections",
       check_sesqui_enumeration},
      {"matrix", "determinant-and-inverse", "det is multiplicative; invertible iff det != 0 iff full rank",
       check_det_inverse},
      {"matrix", "sigma-eps-detection", "generated (sigma, eps)-symmetric matrices are recognised", check_sigma_eps_detection},
      {"matrix", "cut-rank-symmetric-submodular", "cut-rank is symmetric and submodular", check_cut_rank_laws},
      {"matrix", "pivot-transform-blocks", "M*X has the Schur complement block, is an involution, keeps symmetry",
       check_pivot_transform_blocks},
      {"matrix", "tucker-identity", "det((M*X)[Z]) = +-det(M[X^Z]) / det(M[X])", check_tucker},
      {"matrix", "isomorphism-of-permuted-copies", "permuted copies are found isomorphic", check_isomorphism},
      {"width", "layout-optimum", "the subset dynamic program matches enumeration of all layouts", check_width_dp},
      {"width", "rank-width-constants", "K4 = 1, C5 = 2, directed 4-cycle = 2, directed 4-path = 1",
       check_width_constants},
      {"chaingroup", "form-identities", "additivity, linearity, semilinearity, conjugate symmetry, non-degeneracy",
       check_form_identities},
      {"chaingroup", "orthogonal-dimension", "dim L + dim L-perp = 2|V|; isotropic bound; lagrangian is self-orthogonal",
       check_orthogonal_dimension},
      {"chaingroup", "restriction-duality", "the orthogonal of a restriction is the confinement of the orthogonal",
       check_restriction_duality},
      {"chaingroup", "restriction-dimension-sum", "dim L|X + dim of L confined to V\\X = dim L",
       check_restriction_dimension},
      {"chaingroup", "single-vertex-minor-dimension", "dimension drop of a single-vertex minor by membership of x^gamma",
       check_single_minor_rule},
      {"chaingroup", "minor-closure", "minors keep isotropy and lagrangians; the isotropic defect does not grow",
       check_minor_closure},
      {"chaingroup", "connectivity-equals-cut-rank", "connectivity of (M,f,g) equals cut-rank of M", check_connectivity},
      {"chaingroup", "matrix-round-trip", "to_matrix inverts from_matrix", check_matrix_round_trip},
      {"chaingroup", "eulerian-chain-valid", "constructed eulerian chains satisfy the definition", check_eulerian_chain},
      {"chaingroup", "special-chain-criterion", "a special chain is eulerian iff M[X] is non-singular",
       check_special_chains},
      {"chaingroup", "transforms-preserve-group", "pivot, sign, scaling and diagonal laws keep the chain group",
       check_transform_laws},
      {"chaingroup", "minor-matrix-witness", "representable minors are pivoted submatrices with predicted signs",
       [](const VerifyOptions& o) { return check_minor_matrices(o); }},
      {"graphs", "gf4-encoding-round-trip", "directed graphs round-trip through GF(4)", check_gf4_encoding},
      {"graphs", "quadratic-embedding", "embedding into GF(q^2) matches the GF(4) table and is decodable",
       check_quadratic_embedding},
      {"graphs", "embedding-reflects-isomorphism", "G, H isomorphic iff their embeddings are",
       check_embedding_isomorphism},
      {"graphs", "pivot-class-rank-width", "rank-width is constant on pivot classes",
       [](const VerifyOptions& o) { return check_pivot_class_width(o); }},
      {"graphs", "pivot-minor-witness", "witnesses replay and rank-width does not increase", check_pivot_minor_witness},
      {"deltamatroid", "exchange-axiom", "non-singular principal sets satisfy symmetric exchange",
       [](const VerifyOptions& o) { return check_exchange_axiom(o); }},
      {"deltamatroid", "twist-is-complementation", "complementing at feasible X twists the delta-matroid by X",
       check_twists},
      {"deltamatroid", "branch-width-bound", "the bound is at most rank-width and invariant under complementation",
       check_branch_width_bound},
  };
}

inline Report run_verify(const VerifyOptions& o, const std::function<void(const CheckResult&)>& progress = {}) {
  Report r;
  r.seed = o.seed;
  for (const auto& entry : all_checks()) {
    if (!o.filter.empty() && (entry.module + "/" + entry.name).find(o.filter) == std::string::npos) continue;
    const auto start = std::chrono::steady_clock::now();
    CheckResult c;
    c.module = entry.module;
    c.name = entry.name;
    c.claim = entry.claim;
    try {
      const Tally t = entry.run(o);
      c.cases = t.cases;
      c.failures = t.failures;
      c.first_failure = t.first_failure;
    } catch (const std::exception& e) {
      c.failures = 1;
      c.first_failure = std::string("threw ") + e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (progress) progress(c);
    r.checks.push_back(std::move(c));
  }
  return r;
}

}  // namespace sigsym
