#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "k3lat/integer.hpp"

namespace k3lat {

/// Dense row-major matrix over an exact scalar type.
template <typename Scalar>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, Scalar(0)) {}
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (auto const& row : rows) {
      if (row.size() != cols_) throw Error("ragged matrix literal");
      entries_.insert(entries_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(std::vector<std::vector<Scalar>> const& rows) {
    std::size_t const cols = rows.empty() ? 0 : rows.front().size();
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw Error("ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  /// Builds a rows x columns.size() matrix whose j-th column is columns[j].
  static Matrix from_columns(std::vector<std::vector<Scalar>> const& columns,
                             std::size_t rows) {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw Error("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }
  Scalar const& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  std::vector<Scalar> row(std::size_t i) const {
    return {entries_.begin() + i * cols_, entries_.begin() + (i + 1) * cols_};
  }
  std::vector<Scalar> column(std::size_t j) const {
    std::vector<Scalar> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  bool is_diagonal() const {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (i != j && (*this)(i, j) != 0) return false;
    return true;
  }

  // Elementary operations, used by the normal-form routines.
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j)
      std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i)
      std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += factor * row[src]
  void add_row(std::size_t dst, std::size_t src, Scalar const& factor) {
    if (factor == 0) return;
    for (std::size_t j = 0; j < cols_; ++j)
      (*this)(dst, j) += factor * (*this)(src, j);
  }
  /// col[dst] += factor * col[src]
  void add_col(std::size_t dst, std::size_t src, Scalar const& factor) {
    if (factor == 0) return;
    for (std::size_t i = 0; i < rows_; ++i)
      (*this)(i, dst) += factor * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }
  void negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
  }

  friend bool operator==(Matrix const&, Matrix const&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> entries_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rational>;

template <typename Scalar>
Matrix<Scalar> operator*(Matrix<Scalar> const& a, Matrix<Scalar> const& b) {
  if (a.cols() != b.rows()) throw Error("matrix product shape mismatch");
  Matrix<Scalar> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

template <typename Scalar>
std::vector<Scalar> operator*(Matrix<Scalar> const& a,
                              std::vector<Scalar> const& v) {
  if (a.cols() != v.size()) throw Error("matrix-vector shape mismatch");
  std::vector<Scalar> out(a.rows(), Scalar(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

/// u^T * M * v.
template <typename Scalar>
Scalar bilinear(Matrix<Scalar> const& m, std::vector<Scalar> const& u,
                std::vector<Scalar> const& v) {
  if (m.rows() != u.size() || m.cols() != v.size())
    throw Error("bilinear form shape mismatch");
  Scalar s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j) s += u[i] * m(i, j) * v[j];
  }
  return s;
}

/// Block-diagonal sum.
template <typename Scalar>
Matrix<Scalar> block_diagonal(Matrix<Scalar> const& a,
                              Matrix<Scalar> const& b) {
  Matrix<Scalar> m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

/// Horizontal concatenation [a | b].
template <typename Scalar>
Matrix<Scalar> hconcat(Matrix<Scalar> const& a, Matrix<Scalar> const& b) {
  if (a.rows() != b.rows()) throw Error("hconcat row mismatch");
  Matrix<Scalar> m(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

inline RatMatrix to_rational(IntMatrix const& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

/// Exact conversion; empty if some entry is not an integer.
inline std::optional<IntMatrix> to_integer(RatMatrix const& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (boost::multiprecision::denominator(m(i, j)) != 1) return std::nullopt;
      r(i, j) = boost::multiprecision::numerator(m(i, j));
    }
  return r;
}

/// Determinant by fraction-free (Bareiss) elimination.
inline Int determinant(IntMatrix m) {
  if (!m.is_square()) throw Error("determinant of non-square matrix");
  std::size_t const n = m.rows();
  if (n == 0) return 1;
  Int parity = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      parity = -parity;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return parity * m(n - 1, n - 1);
}

/// Exact inverse over the rationals; empty when singular.
inline std::optional<RatMatrix> inverse(RatMatrix m) {
  if (!m.is_square()) throw Error("inverse of non-square matrix");
  std::size_t const n = m.rows();
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) return std::nullopt;
    m.swap_rows(k, p);
    inv.swap_rows(k, p);
    Rational const pivot = m(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      m(k, j) /= pivot;
      inv(k, j) /= pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || m(i, k) == 0) continue;
      Rational const f = -m(i, k);
      m.add_row(i, k, f);
      inv.add_row(i, k, f);
    }
  }
  return inv;
}

inline std::string to_string(IntMatrix const& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) s += ",";
      s += m(i, j).str();
    }
    s += "]";
  }
  return s + "]";
}

}  // namespace k3lat
