#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sigsym/field.hpp"

namespace sigsym {

/// Row-major dense matrix of field elements. The field is passed to every
/// algorithm explicitly.
class Dense {
 public:
  Dense() = default;
  Dense(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Dense identity(const Field& f, std::size_t n) {
    Dense d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = f.one();
    return d;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Elem& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  Elem operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::span<const Elem> row(std::size_t i) const { return {a_.data() + i * cols_, cols_}; }
  std::span<Elem> row(std::size_t i) { return {a_.data() + i * cols_, cols_}; }

  void append_row(std::span<const Elem> r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    a_.insert(a_.end(), r.begin(), r.end());
    ++rows_;
  }

  /// Resets to an empty matrix with `cols` columns.
  void clear_rows(std::size_t cols) {
    rows_ = 0;
    cols_ = cols;
    a_.clear();
  }

  Dense transposed() const {
    Dense t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const Dense&, const Dense&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> a_;
};

/// Reduces `m` in place to reduced row echelon form. Pivots are taken as the
/// first nonzero entry in column order. Returns the pivot columns; rows past
/// the rank are zero.
inline std::vector<std::size_t> rref_in_place(const Field& f, Dense& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t sel = r;
    while (sel < m.rows() && m(sel, c) == f.zero()) ++sel;
    if (sel == m.rows()) continue;
    if (sel != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(r, j));
    const Elem scale = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), scale);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == f.zero()) continue;
      const Elem factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Canonical basis (RREF, zero rows dropped) of the row space.
inline Dense row_space_basis(const Field& f, Dense m) {
  const auto pivots = rref_in_place(f, m);
  Dense out(0, m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) out.append_row(m.row(i));
  return out;
}

inline std::size_t rank(const Field& f, Dense m) { return rref_in_place(f, m).size(); }

/// Determinant; the empty matrix has determinant 1.
inline Elem det(const Field& f, Dense m) {
  if (m.rows() != m.cols()) fail(ErrorKind::InvalidArgument, "determinant of a non-square matrix");
  Elem d = f.one();
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = c;
    while (sel < n && m(sel, c) == f.zero()) ++sel;
    if (sel == n) return f.zero();
    if (sel != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(sel, j), m(c, j));
      d = f.neg(d);
    }
    d = f.mul(d, m(c, c));
    const Elem pinv = f.inv(m(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == f.zero()) continue;
      const Elem factor = f.mul(m(i, c), pinv);
      for (std::size_t j = c; j < n; ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(c, j)));
    }
  }
  return d;
}

inline std::optional<Dense> inverse(const Field& f, const Dense& m) {
  if (m.rows() != m.cols()) fail(ErrorKind::InvalidArgument, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Dense aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = f.one();
  }
  const auto pivots = rref_in_place(f, aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
  Dense inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

inline Dense multiply(const Field& f, const Dense& a, const Dense& b) {
  if (a.cols() != b.rows()) fail(ErrorKind::InvalidArgument, "dimension mismatch in product");
  Dense c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Elem aik = a(i, k);
      if (aik == f.zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = f.add(c(i, j), f.mul(aik, b(k, j)));
    }
  return c;
}

/// Basis (as rows) of the right null space {x : m x = 0}.
inline Dense null_space(const Field& f, Dense m) {
  const auto pivots = rref_in_place(f, m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  Dense out(0, m.cols());
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Elem> v(m.cols(), f.zero());
    v[free] = f.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(m(i, free));
    out.append_row(v);
  }
  return out;
}

/// Basis (as rows) of the left null space {y : y m = 0}.
inline Dense left_null_space(const Field& f, const Dense& m) { return null_space(f, m.transposed()); }

/// Solves y * m = rhs for square non-singular m.
inline std::optional<std::vector<Elem>> solve_left(const Field& f, const Dense& m, std::span<const Elem> rhs) {
  const std::size_t n = m.rows();
  Dense aug(n, n + 1);
  // y m = rhs  <=>  m^t y^t = rhs^t
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(j, i);
    aug(i, n) = rhs[i];
  }
  const auto pivots = rref_in_place(f, aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
  std::vector<Elem> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = aug(i, n);
  return y;
}

}  // namespace sigsym
