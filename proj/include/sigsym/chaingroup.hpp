#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sigsym/error.hpp"
#include "sigsym/field.hpp"
#include "sigsym/linalg.hpp"
#include "sigsym/matrix.hpp"
#include "sigsym/subset.hpp"

namespace sigsym {

/// A vector (a, b) of the plane F^2.
struct KVector {
  Elem a;
  Elem b;

  bool is_zero() const { return a.v == 0 && b.v == 0; }
  friend bool operator==(const KVector&, const KVector&) = default;
};

/// sigma(1) * u.a * sigma(v.b) - u.b * sigma(v.a).
inline Elem b_sigma(const SesquiMorphism& s, KVector u, KVector v) {
  const Field& f = s.field();
  return f.sub(f.mul(f.mul(s.unit(), u.a), s(v.b)), f.mul(u.b, s(v.a)));
}

inline KVector scale(const Field& f, Elem c, KVector u) { return {f.mul(c, u.a), f.mul(c, u.b)}; }

/// {alpha, beta} both isotropic and linearly independent.
inline bool minor_compatible(const SesquiMorphism& s, KVector alpha, KVector beta) {
  const Field& f = s.field();
  if (b_sigma(s, alpha, alpha) != f.zero() || b_sigma(s, beta, beta) != f.zero()) return false;
  return f.sub(f.mul(alpha.a, beta.b), f.mul(alpha.b, beta.a)) != f.zero();
}

/// A function from the ground set into F^2.
struct Chain {
  std::vector<std::string> ground;
  std::vector<KVector> values;

  static Chain zero(std::vector<std::string> ground) {
    Chain c;
    c.values.assign(ground.size(), KVector{});
    c.ground = std::move(ground);
    return c;
  }

  /// The chain equal to gamma at vertex x and zero elsewhere.
  static Chain unit(std::vector<std::string> ground, std::size_t x, KVector gamma) {
    Chain c = zero(std::move(ground));
    c.values[x] = gamma;
    return c;
  }

  std::size_t size() const { return values.size(); }
  KVector operator[](std::size_t i) const { return values[i]; }

  Subset support() const {
    Subset s;
    for (std::size_t i = 0; i < values.size(); ++i)
      if (!values[i].is_zero()) s = s.with(i);
    return s;
  }

  Chain restricted(Subset x) const {
    Chain c;
    for (auto i : x.members()) {
      c.ground.push_back(ground[i]);
      c.values.push_back(values[i]);
    }
    return c;
  }

  std::vector<Elem> coordinates() const {
    std::vector<Elem> out;
    out.reserve(2 * values.size());
    for (const auto& v : values) {
      out.push_back(v.a);
      out.push_back(v.b);
    }
    return out;
  }

  static Chain from_coordinates(std::vector<std::string> ground, std::span<const Elem> coords) {
    Chain c;
    c.values.resize(ground.size());
    for (std::size_t i = 0; i < c.values.size(); ++i) c.values[i] = {coords[2 * i], coords[2 * i + 1]};
    c.ground = std::move(ground);
    return c;
  }

  friend bool operator==(const Chain&, const Chain&) = default;
};

/// <f, g> = sum over x of b_sigma(f(x), g(x)).
inline Elem inner(const SesquiMorphism& s, const Chain& f, const Chain& g) {
  if (f.ground != g.ground) fail(ErrorKind::GroundMismatch, "chains live on different ground sets");
  const Field& fld = s.field();
  Elem total = fld.zero();
  for (std::size_t i = 0; i < f.size(); ++i) total = fld.add(total, b_sigma(s, f[i], g[i]));
  return total;
}

/// A subspace of (F^2)^V, stored as the reduced row echelon basis over the
/// coordinate order (x1.a, x1.b, x2.a, x2.b, ...) in sorted label order.
/// Equal subspaces have equal bases.
class ChainGroup {
 public:
  ChainGroup(SesquiMorphism sigma, std::vector<std::string> ground, Dense rows)
      : sigma_(std::move(sigma)), ground_(std::move(ground)) {
    if (rows.rows() == 0) rows.clear_rows(2 * ground_.size());
    if (rows.cols() != 2 * ground_.size()) fail(ErrorKind::InvalidArgument, "basis width does not match ground set");
    basis_ = row_space_basis(sigma_.field(), std::move(rows));
  }

  static ChainGroup zero(SesquiMorphism sigma, std::vector<std::string> ground) {
    const std::size_t cols = 2 * ground.size();
    return ChainGroup(std::move(sigma), std::move(ground), Dense(0, cols));
  }

  static ChainGroup whole(SesquiMorphism sigma, std::vector<std::string> ground) {
    const Field& f = sigma.field();
    const std::size_t cols = 2 * ground.size();
    return ChainGroup(std::move(sigma), std::move(ground), Dense::identity(f, cols));
  }

  static ChainGroup span(const SesquiMorphism& sigma, const std::vector<std::string>& ground,
                         const std::vector<Chain>& chains) {
    Dense rows(0, 2 * ground.size());
    for (const auto& c : chains) {
      if (c.ground != ground) fail(ErrorKind::GroundMismatch, "chain ground set differs");
      const auto coords = c.coordinates();
      rows.append_row(coords);
    }
    return ChainGroup(sigma, ground, std::move(rows));
  }

  const SesquiMorphism& sigma() const { return sigma_; }
  const Field& field() const { return sigma_.field(); }
  const std::vector<std::string>& ground() const { return ground_; }
  std::size_t ground_size() const { return ground_.size(); }
  std::size_t dim() const { return basis_.rows(); }
  const Dense& basis() const { return basis_; }

  Chain chain(std::size_t i) const { return Chain::from_coordinates(ground_, basis_.row(i)); }

  std::vector<Chain> chains() const {
    std::vector<Chain> out;
    for (std::size_t i = 0; i < dim(); ++i) out.push_back(chain(i));
    return out;
  }

  bool contains(const Chain& c) const {
    if (c.ground != ground_) fail(ErrorKind::GroundMismatch, "chain ground set differs");
    Dense d = basis_;
    const auto coords = c.coordinates();
    d.append_row(coords);
    return rank(field(), std::move(d)) == dim();
  }

  std::string labels_string() const {
    std::string s;
    for (const auto& g : ground_) s += (s.empty() ? "" : " ") + g;
    return s;
  }

  friend bool operator==(const ChainGroup& a, const ChainGroup& b) {
    return a.sigma_ == b.sigma_ && a.ground_ == b.ground_ && a.basis_ == b.basis_;
  }

 private:
  SesquiMorphism sigma_;
  std::vector<std::string> ground_;
  Dense basis_;
};

inline std::vector<std::string> labels_of(const std::vector<std::string>& ground, Subset x) {
  std::vector<std::string> out;
  for (auto i : x.members()) out.push_back(ground[i]);
  return out;
}

namespace detail {

inline Dense project_columns(const Dense& rows, Subset x) {
  const auto xs = x.members();
  Dense out(rows.rows(), 2 * xs.size());
  for (std::size_t r = 0; r < rows.rows(); ++r)
    for (std::size_t i = 0; i < xs.size(); ++i) {
      out(r, 2 * i) = rows(r, 2 * xs[i]);
      out(r, 2 * i + 1) = rows(r, 2 * xs[i] + 1);
    }
  return out;
}

}  // namespace detail

/// L-perp = {v : <u, v> = 0 for all u in L}. With w = sigma~(v) the
/// condition <u, v> = 0 reads sum_x sigma(1) * (sigma(1) u_a w_b - u_b w_a) = 0,
/// which is linear in w; the solutions are mapped back through sigma~.
inline ChainGroup orthogonal(const ChainGroup& l) {
  const Field& f = l.field();
  const SesquiMorphism& s = l.sigma();
  const std::size_t n = l.ground_size();
  Dense system(l.dim(), 2 * n);
  for (std::size_t i = 0; i < l.dim(); ++i)
    for (std::size_t x = 0; x < n; ++x) {
      const Elem ua = l.basis()(i, 2 * x);
      const Elem ub = l.basis()(i, 2 * x + 1);
      system(i, 2 * x) = f.neg(ub);
      system(i, 2 * x + 1) = f.mul(s.unit(), ua);
    }
  Dense w = null_space(f, std::move(system));
  for (std::size_t r = 0; r < w.rows(); ++r)
    for (std::size_t c = 0; c < w.cols(); ++c) w(r, c) = s.normalized(w(r, c));
  return ChainGroup(s, l.ground(), std::move(w));
}

inline bool is_isotropic(const ChainGroup& l) {
  const auto cs = l.chains();
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = 0; j < cs.size(); ++j)
      if (inner(l.sigma(), cs[i], cs[j]) != l.field().zero()) return false;
  return true;
}

inline bool is_lagrangian(const ChainGroup& l) { return l.dim() == l.ground_size() && is_isotropic(l); }

/// L|X: every chain of L restricted to X.
inline ChainGroup restrict(const ChainGroup& l, Subset x) {
  return ChainGroup(l.sigma(), labels_of(l.ground(), x), detail::project_columns(l.basis(), x));
}

/// L^|X: the chains of L supported inside X, restricted to X.
inline ChainGroup confine(const ChainGroup& l, Subset x) {
  const Field& f = l.field();
  const std::size_t n = l.ground_size();
  const Subset outside = x.complement(n);
  // Columns of V \ X first; rows whose pivot falls in the X block vanish
  // outside X and span the chains supported in X.
  std::vector<std::size_t> order;
  for (auto i : outside.members()) {
    order.push_back(2 * i);
    order.push_back(2 * i + 1);
  }
  const std::size_t split = order.size();
  for (auto i : x.members()) {
    order.push_back(2 * i);
    order.push_back(2 * i + 1);
  }
  Dense d(l.dim(), order.size());
  for (std::size_t r = 0; r < l.dim(); ++r)
    for (std::size_t c = 0; c < order.size(); ++c) d(r, c) = l.basis()(r, order[c]);
  const auto pivots = rref_in_place(f, d);
  Dense kept(0, 2 * x.size());
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] < split) continue;
    kept.append_row(d.row(r).subspan(split));
  }
  return ChainGroup(l.sigma(), labels_of(l.ground(), x), std::move(kept));
}

/// L<gamma>X = {f restricted to V \ X : f in L, b(f(x), gamma) = 0 on X}.
inline ChainGroup minor(const ChainGroup& l, KVector gamma, Subset x) {
  if (gamma.is_zero()) fail(ErrorKind::ZeroVector, "minor vector must be nonzero");
  const Field& f = l.field();
  const auto xs = x.members();
  Dense c(l.dim(), xs.size());
  for (std::size_t i = 0; i < l.dim(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j) {
      const KVector u{l.basis()(i, 2 * xs[j]), l.basis()(i, 2 * xs[j] + 1)};
      c(i, j) = b_sigma(l.sigma(), u, gamma);
    }
  const Dense coeffs = xs.empty() ? Dense::identity(f, l.dim()) : left_null_space(f, c);
  const Dense combos = multiply(f, coeffs, l.basis());
  const Subset rest = x.complement(l.ground_size());
  return ChainGroup(l.sigma(), labels_of(l.ground(), rest), detail::project_columns(combos, rest));
}

/// dim of L<gamma>{x}.
inline std::size_t dim_after_single_minor(const ChainGroup& l, KVector gamma, std::size_t x) {
  return minor(l, gamma, Subset::single(x)).dim();
}

/// lambda_L(X) = |X| - dim(L^|X) for lagrangian L.
inline std::size_t connectivity(const ChainGroup& l, Subset x) {
  if (!is_lagrangian(l)) fail(ErrorKind::NotLagrangian, "connectivity needs a lagrangian chain group");
  return x.size() - confine(l, x).dim();
}

/// A pair (f, g) with, at every x: b(f,f) = b(g,g) = 0,
/// b(f,g) = eps(x) sigma(1), b(g,f) = -eps(x) sigma(1)^2.
struct SupplementaryPair {
  Chain f;
  Chain g;
  EpsilonSign eps;

  /// f(x) = eps(x) (1, 0), g(x) = (0, sigma(1)).
  static SupplementaryPair standard(const SesquiMorphism& s, const std::vector<std::string>& ground,
                                    const EpsilonSign& eps) {
    const Field& fld = s.field();
    SupplementaryPair p{Chain::zero(ground), Chain::zero(ground), eps};
    for (std::size_t i = 0; i < ground.size(); ++i) {
      p.f.values[i] = {eps.value(fld, i), fld.zero()};
      p.g.values[i] = {fld.zero(), s.unit()};
    }
    return p;
  }

  bool is_valid(const SesquiMorphism& s) const {
    const Field& fld = s.field();
    if (f.ground != g.ground) return false;
    const Elem s1 = s.unit();
    for (std::size_t i = 0; i < f.size(); ++i) {
      const Elem e = eps.value(fld, i);
      if (b_sigma(s, f[i], f[i]) != fld.zero() || b_sigma(s, g[i], g[i]) != fld.zero()) return false;
      if (b_sigma(s, f[i], g[i]) != fld.mul(e, s1)) return false;
      if (b_sigma(s, g[i], f[i]) != fld.neg(fld.mul(e, fld.mul(s1, s1)))) return false;
    }
    return true;
  }

  friend bool operator==(const SupplementaryPair&, const SupplementaryPair&) = default;
};

namespace detail {

inline void require_pair(const SesquiMorphism& s, const SupplementaryPair& pair, const std::vector<std::string>& ground) {
  if (pair.f.ground != ground || pair.g.ground != ground)
    fail(ErrorKind::GroundMismatch, "supplementary pair lives on a different ground set");
  if (!pair.is_valid(s)) fail(ErrorKind::InvalidSupplementaryPair, "chains are not eps-supplementary");
}

}  // namespace detail

/// The chain group (M, f, g) spanned by the chains f_x with
/// f_x(x) = m_xx f(x) + g(x) and f_x(y) = m_xy f(y) for y != x.
inline ChainGroup from_matrix(const LabeledMatrix& m, const SesquiMorphism& s, const SupplementaryPair& pair) {
  require_same_field(m, s);
  detail::require_pair(s, pair, m.labels());
  if (!is_sigma_eps_symmetric(m, s, pair.eps))
    fail(ErrorKind::NotSigmaEpsSymmetric, "matrix is not (sigma, eps)-symmetric for the pair's eps");
  const Field& f = m.field();
  const std::size_t n = m.size();
  Dense rows(n, 2 * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      KVector v = scale(f, m(x, y), pair.f[y]);
      if (x == y) v = {f.add(v.a, pair.g[y].a), f.add(v.b, pair.g[y].b)};
      rows(x, 2 * y) = v.a;
      rows(x, 2 * y + 1) = v.b;
    }
  return ChainGroup(s, m.labels(), std::move(rows));
}

/// Eulerian test by definition: f is nowhere zero and isotropic at every
/// vertex, and no nonzero h in L has b(h(x), f(x)) = 0 at every x.
inline bool is_eulerian(const ChainGroup& l, const Chain& f) {
  if (f.ground != l.ground()) fail(ErrorKind::GroundMismatch, "chain ground set differs");
  const Field& fld = l.field();
  for (std::size_t x = 0; x < f.size(); ++x)
    if (f[x].is_zero() || b_sigma(l.sigma(), f[x], f[x]) != fld.zero()) return false;
  if (l.dim() == 0) return true;
  Dense b(l.dim(), f.size());
  for (std::size_t i = 0; i < l.dim(); ++i)
    for (std::size_t x = 0; x < f.size(); ++x)
      b(i, x) = b_sigma(l.sigma(), KVector{l.basis()(i, 2 * x), l.basis()(i, 2 * x + 1)}, f[x]);
  return rank(fld, std::move(b)) == l.dim();
}

/// An eulerian chain of a lagrangian L, built recursively on the least
/// vertex x: take eulerian chains of L<alpha>x and L<beta>x, extend them by
/// alpha and beta at x, and return whichever extension validates.
inline Chain eulerian_chain(const ChainGroup& l, KVector alpha, KVector beta) {
  if (!is_lagrangian(l)) fail(ErrorKind::NotLagrangian, "eulerian chains exist only for lagrangian groups");
  if (!minor_compatible(l.sigma(), alpha, beta))
    fail(ErrorKind::InvalidArgument, "alpha and beta are not minor-compatible");
  std::function<Chain(const ChainGroup&)> solve = [&](const ChainGroup& g) -> Chain {
    if (g.ground_size() == 0) return Chain{};
    const Subset first = Subset::single(0);
    const Subset rest = first.complement(g.ground_size());
    for (KVector gamma : {alpha, beta}) {
      const Chain tail = solve(minor(g, gamma, first));
      Chain c = Chain::zero(g.ground());
      c.values[0] = gamma;
      for (std::size_t i = 0; i < tail.size(); ++i) c.values[rest.members()[i]] = tail[i];
      if (is_eulerian(g, c)) return c;
    }
    fail(ErrorKind::NotEulerian, "no eulerian extension found");
  };
  return solve(l);
}

inline Chain eulerian_chain(const ChainGroup& l) {
  const Field& f = l.field();
  return eulerian_chain(l, KVector{f.one(), f.zero()}, KVector{f.zero(), l.sigma().unit()});
}

/// The unique (sigma, eps)-symmetric M with L = (M, f, g). For each x the
/// chain f_x in L is found from b(f(y), f_x(y)) = 0 (y != x) and
/// b(f(x), f_x(x)) = eps(x) sigma(1); then m_xy = b(f_x(y), g(y)) eps(y) / sigma(1).
inline LabeledMatrix to_matrix(const ChainGroup& l, const SupplementaryPair& pair) {
  const SesquiMorphism& s = l.sigma();
  const Field& fld = l.field();
  detail::require_pair(s, pair, l.ground());
  if (!is_lagrangian(l)) fail(ErrorKind::NotLagrangian, "matrix representation needs a lagrangian group");
  if (!is_eulerian(l, pair.f)) fail(ErrorKind::NotEulerian, "f is not an eulerian chain of L");
  const std::size_t n = l.ground_size();
  // b(f(y), sum mu_i u_i(y)) = sum sigma~(mu_i) b(f(y), u_i(y)); solve for
  // lambda = sigma~(mu).
  Dense b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t y = 0; y < n; ++y)
      b(i, y) = b_sigma(s, pair.f[y], KVector{l.basis()(i, 2 * y), l.basis()(i, 2 * y + 1)});
  LabeledMatrix m(fld, l.ground());
  const Elem inv_s1 = fld.inv(s.unit());
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<Elem> rhs(n, fld.zero());
    rhs[x] = fld.mul(pair.eps.value(fld, x), s.unit());
    auto lambda = solve_left(fld, b, rhs);
    if (!lambda) fail(ErrorKind::NotEulerian, "f is not an eulerian chain of L");
    std::vector<Elem> fx(2 * n, fld.zero());
    for (std::size_t i = 0; i < n; ++i) {
      const Elem mu = s.normalized((*lambda)[i]);
      if (mu == fld.zero()) continue;
      for (std::size_t c = 0; c < 2 * n; ++c) fx[c] = fld.add(fx[c], fld.mul(mu, l.basis()(i, c)));
    }
    for (std::size_t y = 0; y < n; ++y) {
      const Elem v = b_sigma(s, KVector{fx[2 * y], fx[2 * y + 1]}, pair.g[y]);
      m(x, y) = fld.mul(fld.mul(v, inv_s1), pair.eps.value(fld, y));
    }
  }
  return m;
}

/// A matrix together with the supplementary pair that represents the same
/// chain group.
struct Representation {
  SupplementaryPair pair;
  LabeledMatrix matrix;
};

/// (P_X (M*X), f', g') with f' = g and g' = sigma(-1) f on X.
inline Representation transform_ppt(const SesquiMorphism& s, const SupplementaryPair& pair, const LabeledMatrix& m,
                                    Subset x) {
  const Field& f = s.field();
  const Elem sm1 = s(f.neg(f.one()));
  LabeledMatrix out = scale_rows(ppt(m, x), DiagonalTransform::pivot_sign(x).diagonal(s, m.size(), DiagonalTransform::Side::Left));
  SupplementaryPair p = pair;
  for (auto i : x.members()) {
    p.f.values[i] = pair.g[i];
    p.g.values[i] = scale(f, sm1, pair.f[i]);
  }
  return {std::move(p), std::move(out)};
}

enum class SignSide { Left, Right };

/// Left: (I_Z M, f, g') with g' = -g on Z. Right: (M I_Z, f', g) with
/// f' = -f on Z. In both cases eps flips on Z.
inline Representation transform_sign(const SesquiMorphism& s, const SupplementaryPair& pair, const LabeledMatrix& m,
                                     Subset z, SignSide side) {
  const Field& f = s.field();
  const Elem m1 = f.neg(f.one());
  SupplementaryPair p = pair;
  LabeledMatrix out = m;
  const auto d = DiagonalTransform::sign(z).diagonal(s, m.size(), DiagonalTransform::Side::Left);
  if (side == SignSide::Left) {
    out = scale_rows(m, d);
    for (auto i : z.members()) p.g.values[i] = scale(f, m1, pair.g[i]);
  } else {
    out = scale_cols(m, d);
    for (auto i : z.members()) p.f.values[i] = scale(f, m1, pair.f[i]);
  }
  if (f.characteristic() != 2) p.eps.negative = p.eps.negative ^ z;
  return {std::move(p), std::move(out)};
}

/// (P M Q^-1, f', g') with f' = q f and g' = p g.
inline Representation transform_scale(const SesquiMorphism& s, const SupplementaryPair& pair, const LabeledMatrix& m,
                                      const ScalingPair& pq) {
  if (pq.p.size() != m.size() || !pq.is_compatible(s))
    fail(ErrorKind::IncompatibleScalingPair, "scaling pair is not sigma-compatible");
  const Field& f = s.field();
  const auto t = DiagonalTransform::scale(pq);
  LabeledMatrix out = apply_transform(m, s, t, t);
  SupplementaryPair p = pair;
  for (std::size_t i = 0; i < m.size(); ++i) {
    p.f.values[i] = scale(f, pq.q[i], pair.f[i]);
    p.g.values[i] = scale(f, pq.p[i], pair.g[i]);
  }
  return {std::move(p), std::move(out)};
}

/// Zero diagonal with g'(x) = m_xx f(x) + g(x).
inline Representation clear_diagonal(const SesquiMorphism& s, const SupplementaryPair& pair, const LabeledMatrix& m) {
  const Field& f = s.field();
  SupplementaryPair p = pair;
  LabeledMatrix out = m;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const KVector mf = scale(f, m(i, i), pair.f[i]);
    p.g.values[i] = {f.add(mf.a, pair.g[i].a), f.add(mf.b, pair.g[i].b)};
    out(i, i) = f.zero();
  }
  return {std::move(p), std::move(out)};
}

/// True when u = (c, 0) or (0, c) with c nonzero.
inline bool is_special_vector(KVector u) { return (u.a.v == 0) != (u.b.v == 0); }

inline bool parallel(const Field& f, KVector u, KVector v) {
  return f.sub(f.mul(u.a, v.b), f.mul(u.b, v.a)) == f.zero();
}

struct SpecialEulerianResult {
  /// Eulerian status of f' by definition.
  bool eulerian = false;
  /// The vertices where f' is not a multiple of f.
  Subset support;
  /// Whether M[support] is non-singular.
  bool nonsingular_block = false;
};

/// For a special representation (M, f, g) and a chain f' with special
/// values, decides whether f' is eulerian for (M, f, g) by a linear solve and
/// reports the block M[X] it should correspond to.
inline SpecialEulerianResult special_eulerian_check(const LabeledMatrix& m, const SesquiMorphism& s,
                                                    const SupplementaryPair& pair, const Chain& fprime) {
  for (std::size_t i = 0; i < m.size(); ++i)
    if (!is_special_vector(pair.f[i]) || !is_special_vector(pair.g[i]))
      fail(ErrorKind::NotSpecialChain, "representation is not special");
  if (fprime.ground != m.labels()) fail(ErrorKind::GroundMismatch, "chain ground set differs");
  for (std::size_t i = 0; i < m.size(); ++i)
    if (!is_special_vector(fprime[i])) fail(ErrorKind::NotSpecialChain, "chain value is not of the form (c,0) or (0,c)");
  const ChainGroup l = from_matrix(m, s, pair);
  SpecialEulerianResult r;
  r.eulerian = is_eulerian(l, fprime);
  for (std::size_t i = 0; i < m.size(); ++i)
    if (!parallel(m.field(), fprime[i], pair.f[i])) r.support = r.support.with(i);
  r.nonsingular_block = nonsingular_principal(m, r.support);
  return r;
}

/// L<beta>X<alpha>Y for disjoint X, Y given as subsets of the ground of L.
inline ChainGroup double_minor(const ChainGroup& l, KVector alpha, KVector beta, Subset x, Subset y) {
  if ((x & y) != Subset{}) fail(ErrorKind::OverlappingMinorSets, "minor sets overlap");
  const ChainGroup first = minor(l, beta, x);
  Subset shifted;
  const auto rest = x.complement(l.ground_size()).members();
  for (std::size_t i = 0; i < rest.size(); ++i)
    if (y.contains(rest[i])) shifted = shifted.with(i);
  return minor(first, alpha, shifted);
}

struct MinorMatrixWitness {
  Subset pivot;
  Subset signs;
};

struct MinorMatrixSearch {
  /// Whether the minor has a representation with f'(x) = eps_minor(x) alpha
  /// and g'(x) = beta, i.e. whether that f' is eulerian for it.
  bool representable = false;
  /// First (A, Z) found, A then Z in increasing bitmask order.
  std::optional<MinorMatrixWitness> witness;
  /// Whether some A works with Z = {x in V' : eps_minor(x) != eps(x)}.
  bool predicted_signs_work = false;
};

/// For the group L = (M, f, g) with the standard pair of eps, takes the minor
/// L' = L<beta>X<alpha>Y with alpha = (1,0), beta = (0, sigma(1)), represents
/// it by the standard pair of eps_minor on V' = V \ (X u Y), and searches for
/// A in X (M[A] non-singular) and Z in V' with M' = ((M/M[A])[V']) I_Z.
/// Subsets of V' are indexed within V'.
inline MinorMatrixSearch minor_matrix_witness(const LabeledMatrix& m, const SesquiMorphism& s, const EpsilonSign& eps,
                                              Subset x, Subset y, const EpsilonSign& eps_minor) {
  const Field& f = s.field();
  const ChainGroup l = from_matrix(m, s, SupplementaryPair::standard(s, m.labels(), eps));
  const ChainGroup lm = double_minor(l, KVector{f.one(), f.zero()}, KVector{f.zero(), s.unit()}, x, y);
  const auto pair = SupplementaryPair::standard(s, lm.ground(), eps_minor);
  MinorMatrixSearch out;
  if (!is_eulerian(lm, pair.f)) return out;
  out.representable = true;
  const LabeledMatrix target = to_matrix(lm, pair);
  const std::size_t n = m.size();
  const std::size_t nm = lm.ground_size();
  Subset predicted;
  for (std::size_t i = 0; i < nm; ++i)
    if (eps_minor.value(f, i) != eps.value(f, m.index_of(lm.ground()[i]))) predicted = predicted.with(i);
  for (std::uint32_t abits = 0; abits < (1u << n); ++abits) {
    const Subset a(abits);
    if (!a.is_subset_of(x) || !nonsingular_principal(m, a)) continue;
    const LabeledMatrix sc = schur_complement(m, a);
    LabeledMatrix restricted(f, lm.ground());
    for (std::size_t i = 0; i < nm; ++i)
      for (std::size_t j = 0; j < nm; ++j) restricted(i, j) = sc.at(lm.ground()[i], lm.ground()[j]);
    for (std::uint32_t zbits = 0; zbits < (1u << nm); ++zbits) {
      const auto d = DiagonalTransform::sign(Subset(zbits)).diagonal(s, nm, DiagonalTransform::Side::Right);
      if (scale_cols(restricted, d) != target) continue;
      if (!out.witness) out.witness = MinorMatrixWitness{a, Subset(zbits)};
      if (Subset(zbits) == predicted) out.predicted_signs_work = true;
    }
    if (out.witness && out.predicted_signs_work) break;
  }
  return out;
}

}  // namespace sigsym
