#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "sigsym/error.hpp"
#include "sigsym/field.hpp"
#include "sigsym/linalg.hpp"
#include "sigsym/subset.hpp"

namespace sigsym {

inline constexpr std::size_t kMaxLabels = 24;

/// Sign function V -> {-1,+1}, stored as the set of vertices mapped to -1.
struct EpsilonSign {
  Subset negative;

  int sign(std::size_t i) const { return negative.contains(i) ? -1 : 1; }
  Elem value(const Field& f, std::size_t i) const { return negative.contains(i) ? f.neg(f.one()) : f.one(); }
  friend bool operator==(const EpsilonSign&, const EpsilonSign&) = default;
};

/// A (V,V)-matrix over a finite field. Vertices are kept in sorted label
/// order; index i always refers to the i-th label in that order.
class LabeledMatrix {
 public:
  LabeledMatrix(Field field, std::vector<std::string> labels) : field_(std::move(field)), labels_(std::move(labels)) {
    std::sort(labels_.begin(), labels_.end());
    if (std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end())
      fail(ErrorKind::InvalidArgument, "duplicate vertex label");
    if (labels_.size() > kMaxLabels) fail(ErrorKind::SizeLimitExceeded, "at most 24 vertices supported");
    entries_ = Dense(labels_.size(), labels_.size());
  }

  /// Builds a matrix whose rows/columns are listed in the order of `labels`
  /// (not necessarily sorted).
  static LabeledMatrix from_rows(const Field& field, const std::vector<std::string>& labels,
                                 const std::vector<std::vector<Elem>>& rows) {
    LabeledMatrix m(field, labels);
    if (rows.size() != labels.size()) fail(ErrorKind::InvalidArgument, "row count does not match labels");
    std::vector<std::size_t> pos(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) pos[i] = m.index_of(labels[i]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != labels.size()) fail(ErrorKind::InvalidArgument, "row length does not match labels");
      for (std::size_t j = 0; j < rows[i].size(); ++j) {
        if (!field.contains(rows[i][j])) fail(ErrorKind::FieldMismatch, "entry outside the field");
        m(pos[i], pos[j]) = rows[i][j];
      }
    }
    return m;
  }

  static LabeledMatrix identity(const Field& field, std::vector<std::string> labels) {
    LabeledMatrix m(field, std::move(labels));
    for (std::size_t i = 0; i < m.size(); ++i) m(i, i) = field.one();
    return m;
  }

  /// Labels "a", "b", ... for generated matrices.
  static std::vector<std::string> default_labels(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
    return out;
  }

  static LabeledMatrix from_dense(const Field& field, std::vector<std::string> sorted_labels, Dense d) {
    LabeledMatrix m(field, std::move(sorted_labels));
    if (d.rows() != m.size() || d.cols() != m.size()) fail(ErrorKind::InvalidArgument, "dense size mismatch");
    m.entries_ = std::move(d);
    return m;
  }

  const Field& field() const { return field_; }
  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  Subset all() const { return Subset::full(size()); }

  Elem operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  Elem& operator()(std::size_t i, std::size_t j) { return entries_(i, j); }

  std::size_t index_of(const std::string& label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) fail(ErrorKind::InvalidArgument, "unknown vertex '" + label + "'");
    return static_cast<std::size_t>(it - labels_.begin());
  }

  Elem at(const std::string& x, const std::string& y) const { return entries_(index_of(x), index_of(y)); }

  Subset subset(const std::vector<std::string>& members) const {
    Subset s;
    for (const auto& m : members) s = s.with(index_of(m));
    return s;
  }

  std::vector<std::string> labels_of(Subset s) const {
    std::vector<std::string> out;
    for (auto i : s.members()) out.push_back(labels_[i]);
    return out;
  }

  const Dense& dense() const { return entries_; }

  Dense block(Subset rows, Subset cols) const {
    const auto r = rows.members();
    const auto c = cols.members();
    Dense d(r.size(), c.size());
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = 0; j < c.size(); ++j) d(i, j) = entries_(r[i], c[j]);
    return d;
  }

  /// M[X] as a matrix on the labels of X.
  LabeledMatrix principal(Subset x) const { return from_dense(field_, labels_of(x), block(x, x)); }

  bool zero_diagonal() const {
    for (std::size_t i = 0; i < size(); ++i)
      if (entries_(i, i) != field_.zero()) return false;
    return true;
  }

  friend bool operator==(const LabeledMatrix& a, const LabeledMatrix& b) {
    return a.field_ == b.field_ && a.labels_ == b.labels_ && a.entries_ == b.entries_;
  }

 private:
  Field field_;
  std::vector<std::string> labels_;
  Dense entries_;
};

inline void require_same_field(const LabeledMatrix& m, const SesquiMorphism& s) { require_same_field(m.field(), s.field()); }

/// rk(M[X,Y]); 0 when X or Y is empty.
inline std::size_t rank(const LabeledMatrix& m, Subset rows, Subset cols) {
  if (rows.empty() || cols.empty()) return 0;
  return rank(m.field(), m.block(rows, cols));
}

inline std::size_t cut_rank(const LabeledMatrix& m, Subset x) { return rank(m, x, x.complement(m.size())); }

inline Elem det(const LabeledMatrix& m) { return det(m.field(), m.dense()); }

/// det(M[X]); det of the empty principal submatrix is 1.
inline Elem principal_det(const LabeledMatrix& m, Subset x) { return det(m.field(), m.block(x, x)); }

inline bool nonsingular_principal(const LabeledMatrix& m, Subset x) {
  return principal_det(m, x) != m.field().zero();
}

inline LabeledMatrix inverse(const LabeledMatrix& m) {
  auto inv = inverse(m.field(), m.dense());
  if (!inv) fail(ErrorKind::SingularMatrix, "matrix is singular");
  return LabeledMatrix::from_dense(m.field(), m.labels(), std::move(*inv));
}

/// Finds epsilon with eps(x) m_xy = eps(y) sigma(m_yx) for all x, y, if one
/// exists. The least vertex of each connected component of the nonzero
/// pattern is pinned to +1.
inline std::optional<EpsilonSign> sigma_eps_check(const LabeledMatrix& m, const SesquiMorphism& sigma) {
  require_same_field(m, sigma);
  const Field& f = m.field();
  const std::size_t n = m.size();
  for (std::size_t x = 0; x < n; ++x)
    if (m(x, x) != sigma(m(x, x))) return std::nullopt;

  const Elem one = f.one();
  const Elem minus_one = f.neg(one);
  std::vector<int> sign(n, 0);
  for (std::size_t root = 0; root < n; ++root) {
    if (sign[root] != 0) continue;
    sign[root] = 1;
    std::vector<std::size_t> stack{root};
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      for (std::size_t y = 0; y < n; ++y) {
        if (y == x) continue;
        const Elem mxy = m(x, y);
        const Elem smyx = sigma(m(y, x));
        if (mxy == f.zero() && smyx == f.zero()) continue;
        if (mxy == f.zero() || smyx == f.zero()) return std::nullopt;
        // eps(y) = eps(x) * m_xy / sigma(m_yx)
        const Elem ratio = f.div(mxy, smyx);
        int ey = 0;
        if (ratio == one) ey = sign[x];
        else if (ratio == minus_one) ey = -sign[x];
        else return std::nullopt;
        if (sign[y] == 0) {
          sign[y] = ey;
          stack.push_back(y);
        } else if (sign[y] != ey && one != minus_one) {
          return std::nullopt;
        }
      }
    }
  }
  EpsilonSign eps;
  for (std::size_t i = 0; i < n; ++i)
    if (sign[i] < 0 && one != minus_one) eps.negative = eps.negative.with(i);
  return eps;
}

/// Exact check of eps(x) m_xy = eps(y) sigma(m_yx) for a given epsilon.
inline bool is_sigma_eps_symmetric(const LabeledMatrix& m, const SesquiMorphism& sigma, const EpsilonSign& eps) {
  require_same_field(m, sigma);
  const Field& f = m.field();
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = 0; y < m.size(); ++y)
      if (f.mul(eps.value(f, x), m(x, y)) != f.mul(eps.value(f, y), sigma(m(y, x)))) return false;
  return true;
}

/// Some sesqui-morphism (in enumeration order) for which M is
/// (sigma,eps)-symmetric.
inline std::optional<SesquiMorphism> find_sigma(const LabeledMatrix& m) {
  for (const auto& s : enumerate_sesqui(m.field()))
    if (sigma_eps_check(m, s)) return s;
  return std::nullopt;
}

namespace detail {

inline Dense pivot_inverse(const LabeledMatrix& m, Subset x) {
  auto inv = inverse(m.field(), m.block(x, x));
  if (!inv) fail(ErrorKind::SingularPivotBlock, "M[X] is singular");
  return std::move(*inv);
}

}  // namespace detail

/// M/M[X] = D - C A^-1 B on the labels of V \ X.
inline LabeledMatrix schur_complement(const LabeledMatrix& m, Subset x) {
  const Field& f = m.field();
  const Subset rest = x.complement(m.size());
  const Dense a_inv = detail::pivot_inverse(m, x);
  const Dense correction = multiply(f, multiply(f, m.block(rest, x), a_inv), m.block(x, rest));
  Dense d = m.block(rest, rest);
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j) d(i, j) = f.sub(d(i, j), correction(i, j));
  return LabeledMatrix::from_dense(f, m.labels_of(rest), std::move(d));
}

/// Principal pivot transform M*X with blocks
///   [ A^-1        A^-1 B ]
///   [ -C A^-1     M/A    ]
/// written back onto the original labels.
inline LabeledMatrix ppt(const LabeledMatrix& m, Subset x) {
  const Field& f = m.field();
  const Subset rest = x.complement(m.size());
  const auto xs = x.members();
  const auto rs = rest.members();
  const Dense a_inv = detail::pivot_inverse(m, x);
  const Dense top_right = multiply(f, a_inv, m.block(x, rest));
  const Dense c_ainv = multiply(f, m.block(rest, x), a_inv);
  const Dense correction = multiply(f, c_ainv, m.block(x, rest));

  LabeledMatrix out = m;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < xs.size(); ++j) out(xs[i], xs[j]) = a_inv(i, j);
    for (std::size_t j = 0; j < rs.size(); ++j) out(xs[i], rs[j]) = top_right(i, j);
  }
  for (std::size_t i = 0; i < rs.size(); ++i) {
    for (std::size_t j = 0; j < xs.size(); ++j) out(rs[i], xs[j]) = f.neg(c_ainv(i, j));
    for (std::size_t j = 0; j < rs.size(); ++j) out(rs[i], rs[j]) = f.sub(m(rs[i], rs[j]), correction(i, j));
  }
  return out;
}

/// det((M*X)[Z]) = u * det(M[Z ^ X]) / det(M[X]) for some u in {+1,-1}.
inline bool tucker_check(const LabeledMatrix& m, Subset x, Subset z) {
  const Field& f = m.field();
  const Elem dx = principal_det(m, x);
  if (dx == f.zero()) fail(ErrorKind::SingularPivotBlock, "M[X] is singular");
  const Elem lhs = principal_det(ppt(m, x), z);
  const Elem rhs = f.div(principal_det(m, z ^ x), dx);
  return lhs == rhs || lhs == f.neg(rhs);
}

/// Diagonal pair (P, Q) with p_xx^-1 = sigma(q_xx) sigma(1)^-1 at every x.
struct ScalingPair {
  std::vector<Elem> p;
  std::vector<Elem> q;

  static ScalingPair identity(const Field& f, std::size_t n) {
    return {std::vector<Elem>(n, f.one()), std::vector<Elem>(n, f.one())};
  }

  /// The compatible partner of p: q = sigma(sigma(1) / p).
  static Elem partner(const SesquiMorphism& sigma, Elem p) {
    const Field& f = sigma.field();
    return sigma(f.div(sigma.unit(), p));
  }

  /// Identity except p = value at one vertex, with the forced q there.
  static ScalingPair single(const SesquiMorphism& sigma, std::size_t n, std::size_t vertex, Elem value) {
    auto pair = identity(sigma.field(), n);
    pair.p[vertex] = value;
    pair.q[vertex] = partner(sigma, value);
    return pair;
  }

  bool is_compatible(const SesquiMorphism& sigma) const {
    const Field& f = sigma.field();
    if (p.size() != q.size()) return false;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] == f.zero() || q[i] == f.zero()) return false;
      if (f.inv(p[i]) != f.div(sigma(q[i]), sigma.unit())) return false;
    }
    return true;
  }

  bool is_identity(const Field& f) const {
    return std::all_of(p.begin(), p.end(), [&](Elem e) { return e == f.one(); }) &&
           std::all_of(q.begin(), q.end(), [&](Elem e) { return e == f.one(); });
  }

  friend bool operator==(const ScalingPair&, const ScalingPair&) = default;
};

/// One diagonal factor: P_X (sigma(-1) on X), I_Z (-1 on Z), or a scaling
/// pair, which contributes P on the left and Q^-1 on the right.
struct DiagonalTransform {
  enum class Kind { PivotSign, Sign, Scaling };

  Kind kind = Kind::Sign;
  Subset support;
  ScalingPair scaling;

  static DiagonalTransform pivot_sign(Subset x) { return {Kind::PivotSign, x, {}}; }
  static DiagonalTransform sign(Subset z) { return {Kind::Sign, z, {}}; }
  static DiagonalTransform scale(ScalingPair pair) { return {Kind::Scaling, {}, std::move(pair)}; }
  static DiagonalTransform none() { return sign({}); }

  enum class Side { Left, Right };

  std::vector<Elem> diagonal(const SesquiMorphism& sigma, std::size_t n, Side side) const {
    const Field& f = sigma.field();
    std::vector<Elem> d(n, f.one());
    switch (kind) {
      case Kind::PivotSign:
        for (auto i : support.members()) d[i] = sigma(f.neg(f.one()));
        break;
      case Kind::Sign:
        for (auto i : support.members()) d[i] = f.neg(f.one());
        break;
      case Kind::Scaling:
        if (scaling.p.size() != n || !scaling.is_compatible(sigma))
          fail(ErrorKind::IncompatibleScalingPair, "scaling pair is not sigma-compatible");
        for (std::size_t i = 0; i < n; ++i) d[i] = side == Side::Left ? scaling.p[i] : f.inv(scaling.q[i]);
        break;
    }
    return d;
  }
};

inline LabeledMatrix scale_rows(LabeledMatrix m, const std::vector<Elem>& d) {
  const Field& f = m.field();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) m(i, j) = f.mul(d[i], m(i, j));
  return m;
}

inline LabeledMatrix scale_cols(LabeledMatrix m, const std::vector<Elem>& d) {
  const Field& f = m.field();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) m(i, j) = f.mul(m(i, j), d[j]);
  return m;
}

/// left * M * right.
inline LabeledMatrix apply_transform(const LabeledMatrix& m, const SesquiMorphism& sigma, const DiagonalTransform& left,
                                     const DiagonalTransform& right) {
  require_same_field(m, sigma);
  using Side = DiagonalTransform::Side;
  return scale_cols(scale_rows(m, left.diagonal(sigma, m.size(), Side::Left)),
                    right.diagonal(sigma, m.size(), Side::Right));
}

/// Parameters of I_Z * P * P_X * (M*X) * Q^-1 * I_Z'.
struct LoopPivotParams {
  Subset pivot;
  Subset left_signs;
  Subset right_signs;
  std::optional<ScalingPair> scaling;

  friend bool operator==(const LoopPivotParams&, const LoopPivotParams&) = default;
};

inline LabeledMatrix loop_pivot_matrix(const LabeledMatrix& m, const SesquiMorphism& sigma, const LoopPivotParams& params) {
  require_same_field(m, sigma);
  using Side = DiagonalTransform::Side;
  const std::size_t n = m.size();
  LabeledMatrix out = ppt(m, params.pivot);
  out = scale_rows(std::move(out), DiagonalTransform::pivot_sign(params.pivot).diagonal(sigma, n, Side::Left));
  if (params.scaling) {
    const auto t = DiagonalTransform::scale(*params.scaling);
    out = scale_rows(std::move(out), t.diagonal(sigma, n, Side::Left));
    out = scale_cols(std::move(out), t.diagonal(sigma, n, Side::Right));
  }
  out = scale_rows(std::move(out), DiagonalTransform::sign(params.left_signs).diagonal(sigma, n, Side::Left));
  out = scale_cols(std::move(out), DiagonalTransform::sign(params.right_signs).diagonal(sigma, n, Side::Right));
  return out;
}

inline LabeledMatrix with_zero_diagonal(LabeledMatrix m) {
  for (std::size_t i = 0; i < m.size(); ++i) m(i, i) = m.field().zero();
  return m;
}

/// Lexicographically least bijection h (as index map M -> N) with
/// m_xy = n_h(x)h(y), found by backtracking with row/column signature
/// pruning.
inline std::optional<std::vector<std::size_t>> matrix_isomorphic(const LabeledMatrix& m, const LabeledMatrix& n) {
  require_same_field(m.field(), n.field());
  if (m.size() != n.size()) return std::nullopt;
  const std::size_t size = m.size();
  if (size > 10) fail(ErrorKind::SizeLimitExceeded, "isomorphism search limited to 10 vertices");

  auto signature = [size](const LabeledMatrix& a, std::size_t v) {
    std::vector<std::uint16_t> sig{a(v, v).v};
    std::vector<std::uint16_t> row, col;
    for (std::size_t w = 0; w < size; ++w) {
      if (w == v) continue;
      row.push_back(a(v, w).v);
      col.push_back(a(w, v).v);
    }
    std::sort(row.begin(), row.end());
    std::sort(col.begin(), col.end());
    sig.insert(sig.end(), row.begin(), row.end());
    sig.insert(sig.end(), col.begin(), col.end());
    return sig;
  };
  std::vector<std::vector<std::uint16_t>> sm(size), sn(size);
  for (std::size_t v = 0; v < size; ++v) {
    sm[v] = signature(m, v);
    sn[v] = signature(n, v);
  }

  std::vector<std::size_t> h(size);
  std::vector<bool> used(size, false);
  auto extend = [&](auto&& self, std::size_t u) -> bool {
    if (u == size) return true;
    for (std::size_t v = 0; v < size; ++v) {
      if (used[v] || sm[u] != sn[v]) continue;
      bool ok = m(u, u) == n(v, v);
      for (std::size_t w = 0; ok && w < u; ++w)
        ok = m(u, w) == n(v, h[w]) && m(w, u) == n(h[w], v);
      if (!ok) continue;
      h[u] = v;
      used[v] = true;
      if (self(self, u + 1)) return true;
      used[v] = false;
    }
    return false;
  };
  if (!extend(extend, 0)) return std::nullopt;
  return h;
}

}  // namespace sigsym
