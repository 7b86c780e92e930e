#pragma once

#include <cassert>
#include <concepts>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "quad_ext.hpp"
#include "rational.hpp"

namespace ratquiver {

/// Dense row-major matrix over an exact field. The matrix carries a zero
/// element of its scalar type, since for QuadExt the field itself is part of
/// every value.
template <class S>
class Matrix {
 public:
  using value_type = S;

  Matrix() requires std::default_initializable<S> : Matrix(0, 0) {}
  Matrix(std::size_t rows, std::size_t cols) requires std::default_initializable<S> : Matrix(rows, cols, S{}) {}
  Matrix(std::size_t rows, std::size_t cols, S zero)
      : rows_(rows), cols_(cols), zero_(std::move(zero)), entries_(rows * cols, zero_) {}

  static Matrix identity(std::size_t n, const S& zero) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one_like(zero);
    return m;
  }
  static Matrix identity(std::size_t n) requires std::default_initializable<S> { return identity(n, S{}); }

  /// Builds a matrix from nested rows; all rows must have equal length.
  static Matrix from_rows(const std::vector<std::vector<S>>& rows, const S& zero, std::size_t cols_if_empty = 0) {
    std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
    Matrix m(rows.size(), cols, zero);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw error(errc::shape_mismatch, "ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<S>>& rows) requires std::default_initializable<S> {
    return from_rows(rows, S{});
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const S& zero() const { return zero_; }
  bool empty() const { return entries_.empty(); }

  S& operator()(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return entries_[i * cols_ + j];
  }
  const S& operator()(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return entries_[i * cols_ + j];
  }

  std::span<const S> entries() const { return entries_; }
  std::span<S> entries() { return entries_; }

  std::vector<S> row(std::size_t i) const {
    return std::vector<S>(entries_.begin() + i * cols_, entries_.begin() + (i + 1) * cols_);
  }
  std::vector<S> col(std::size_t j) const {
    std::vector<S> v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
  }

  bool is_zero_matrix() const {
    for (const auto& x : entries_)
      if (!is_zero(x)) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_, zero_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Rows [r0, r0+nr) and columns [c0, c0+nc).
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(nr, nc, zero_);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    same_shape(a, b);
    Matrix c(a.rows_, a.cols_, a.zero_);
    for (std::size_t k = 0; k < a.entries_.size(); ++k) c.entries_[k] = a.entries_[k] + b.entries_[k];
    return c;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    same_shape(a, b);
    Matrix c(a.rows_, a.cols_, a.zero_);
    for (std::size_t k = 0; k < a.entries_.size(); ++k) c.entries_[k] = a.entries_[k] - b.entries_[k];
    return c;
  }
  friend Matrix operator-(const Matrix& a) {
    Matrix c(a.rows_, a.cols_, a.zero_);
    for (std::size_t k = 0; k < a.entries_.size(); ++k) c.entries_[k] = -a.entries_[k];
    return c;
  }
  friend Matrix operator*(const S& s, const Matrix& a) {
    Matrix c(a.rows_, a.cols_, a.zero_);
    for (std::size_t k = 0; k < a.entries_.size(); ++k) c.entries_[k] = s * a.entries_[k];
    return c;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw error(errc::dimension_mismatch, "product of " + a.shape() + " and " + b.shape());
    Matrix c(a.rows_, b.cols_, a.zero_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const S& aik = a(i, k);
        if (is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend std::vector<S> operator*(const Matrix& a, const std::vector<S>& x) {
    if (a.cols_ != x.size()) throw error(errc::dimension_mismatch, "matrix-vector product");
    std::vector<S> y(a.rows_, a.zero_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) y[i] += a(i, j) * x[j];
    return y;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? ", " : "") << m(i, j);
      os << ']';
    }
    return os << ']';
  }

 private:
  static void same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw error(errc::dimension_mismatch, "shapes " + a.shape() + " and " + b.shape());
  }

  std::size_t rows_;
  std::size_t cols_;
  S zero_;
  std::vector<S> entries_;
};

template <class S>
struct RrefResult {
  Matrix<S> reduced;
  std::size_t rank;
  std::vector<std::size_t> pivots;
};

/// Gauss-Jordan elimination; pivots are the first nonzero entry found
/// scanning down each column.
template <class S>
RrefResult<S> rref(Matrix<S> a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && is_zero(a(p, c))) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    S inv = inverse_of(a(r, c));
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) = a(r, j) * inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || is_zero(a(i, c))) continue;
      S f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), r, std::move(pivots)};
}

template <class S>
std::size_t rank(const Matrix<S>& a) {
  return rref(a).rank;
}

/// Basis of {x : A x = 0}. One vector per free column, in increasing column
/// order, with a 1 in that column and 0 in every other free column.
template <class S>
std::vector<std::vector<S>> kernel_basis(const Matrix<S>& a) {
  auto [r, rk, pivots] = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<S>> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<S> x(a.cols(), a.zero());
    x[f] = one_like(a.zero());
    for (std::size_t i = 0; i < rk; ++i) x[pivots[i]] = -r(i, f);
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Some x with A x = b (free variables set to 0), or nullopt.
template <class S>
std::optional<std::vector<S>> solve(const Matrix<S>& a, const std::vector<S>& b) {
  if (b.size() != a.rows())
    throw error(errc::dimension_mismatch, "right-hand side has length " + std::to_string(b.size()) + ", expected " +
                                              std::to_string(a.rows()));
  Matrix<S> aug(a.rows(), a.cols() + 1, a.zero());
  aug.set_block(0, 0, a);
  for (std::size_t i = 0; i < a.rows(); ++i) aug(i, a.cols()) = b[i];
  auto [r, rk, pivots] = rref(std::move(aug));
  if (rk > 0 && pivots[rk - 1] == a.cols()) return std::nullopt;
  std::vector<S> x(a.cols(), a.zero());
  for (std::size_t i = 0; i < rk; ++i) x[pivots[i]] = r(i, a.cols());
  return x;
}

template <class S>
std::optional<Matrix<S>> try_inverse(const Matrix<S>& a) {
  if (a.rows() != a.cols()) throw error(errc::dimension_mismatch, "inverse of non-square " + a.shape());
  std::size_t n = a.rows();
  Matrix<S> aug(n, 2 * n, a.zero());
  aug.set_block(0, 0, a);
  aug.set_block(0, n, Matrix<S>::identity(n, a.zero()));
  auto res = rref(std::move(aug));
  if (res.rank < n || (n > 0 && res.pivots[n - 1] != n - 1)) return std::nullopt;
  return res.reduced.block(0, n, n, n);
}

template <class S>
Matrix<S> inverse(const Matrix<S>& a) {
  auto inv = try_inverse(a);
  if (!inv) throw error(errc::singular_matrix, "matrix is not invertible");
  return *std::move(inv);
}

/// Stacks vectors as the columns of a matrix.
template <class S>
Matrix<S> from_columns(const std::vector<std::vector<S>>& cols, std::size_t rows, const S& zero) {
  Matrix<S> m(rows, cols.size(), zero);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw error(errc::dimension_mismatch, "column length");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

// Quadratic-field matrices ---------------------------------------------------

/// The common d of all entries; throws mixed_field if they disagree.
inline long common_field(const Matrix<QuadExt>& a) {
  long d = a.zero().d();
  for (const auto& x : a.entries())
    if (x.d() != d) throw error(errc::mixed_field, "matrix mixes sqrt(" + std::to_string(d) + ") and sqrt(" +
                                                       std::to_string(x.d()) + ")");
  return d;
}

/// Entry-wise Galois conjugation sqrt(d) -> -sqrt(d).
inline Matrix<QuadExt> quad_conj_matrix(const Matrix<QuadExt>& a) {
  common_field(a);
  Matrix<QuadExt> c(a.rows(), a.cols(), a.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j).conj();
  return c;
}

/// The rational 2n x 2n matrix of the Q-linear map L^n -> L^n given by A,
/// in the ordered basis where slots 2k, 2k+1 hold the 1- and
/// sqrt(d)-components of coordinate k.
inline Matrix<Rational> restrict_scalars(const Matrix<QuadExt>& a) {
  if (a.rows() != a.cols()) throw error(errc::dimension_mismatch, "restriction of scalars needs a square matrix, got " + a.shape());
  long d = common_field(a);
  std::size_t n = a.rows();
  Matrix<Rational> r(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const QuadExt& x = a(i, j);
      // (x0 + x1 s)(1) = x0 + x1 s ; (x0 + x1 s)(s) = d x1 + x0 s
      r(2 * i, 2 * j) = x.a0();
      r(2 * i + 1, 2 * j) = x.a1();
      r(2 * i, 2 * j + 1) = d * x.a1();
      r(2 * i + 1, 2 * j + 1) = x.a0();
    }
  return r;
}

inline Matrix<Rational> restrict_scalars(const Matrix<QuadExt>& a, std::size_t n) {
  if (a.rows() != n || a.cols() != n)
    throw error(errc::dimension_mismatch, "expected " + std::to_string(n) + "x" + std::to_string(n) + ", got " + a.shape());
  return restrict_scalars(a);
}

/// Lifts a rational matrix into Q(sqrt(d)).
inline Matrix<QuadExt> to_quad(const Matrix<Rational>& a, long d) {
  Matrix<QuadExt> q(a.rows(), a.cols(), QuadExt::rational(Rational(0), d));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) q(i, j) = QuadExt::rational(a(i, j), d);
  return q;
}

}  // namespace ratquiver

namespace ratquiver {

/// Exact determinant by elimination.
template <class S>
S determinant(Matrix<S> a) {
  if (a.rows() != a.cols()) throw error(errc::dimension_mismatch, "determinant of non-square " + a.shape());
  std::size_t n = a.rows();
  S det = one_like(a.zero());
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(a(p, c))) ++p;
    if (p == n) return a.zero();
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det = det * a(c, c);
    S inv = inverse_of(a(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(a(i, c))) continue;
      S f = a(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

/// Positive semidefiniteness of a symmetric rational matrix by symmetric
/// elimination: a zero pivot must have a zero row, a negative pivot fails.
inline bool is_positive_semidefinite(Matrix<Rational> a) {
  std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    int s = sgn(a(k, k));
    if (s < 0) return false;
    if (s == 0) {
      for (std::size_t j = k; j < n; ++j)
        if (sgn(a(k, j)) != 0) return false;
      continue;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(a(i, k)) == 0) continue;
      Rational f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return true;
}

}  // namespace ratquiver
