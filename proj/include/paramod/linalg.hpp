#pragma once

// Dense matrices over exact rings and the handful of linear-algebra routines
// the rest of the library needs: rank, kernels, column spaces, subspace sums.
// Everything is exact; there is no floating point in here.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "paramod/errors.hpp"

namespace paramod {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw InvalidInput("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& x) { return x == 0; });
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Matrix column(std::size_t c) const {
    Matrix v(rows_, 1);
    for (std::size_t r = 0; r < rows_; ++r) v(r, 0) = (*this)(r, c);
    return v;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InvalidInput("matrix product: dimension mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << '[';
    for (std::size_t r = 0; r < m.rows_; ++r) {
      os << (r ? ", [" : "[");
      for (std::size_t c = 0; c < m.cols_; ++c) os << (c ? ", " : "") << m(r, c);
      os << ']';
    }
    return os << ']';
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<BigInt>;
using RationalMatrix = Matrix<Rational>;

inline RationalMatrix to_rational(const IntMatrix& m) {
  RationalMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = Rational(m(r, c));
  return out;
}

template <typename T>
Matrix<T> power(const Matrix<T>& m, std::size_t e) {
  if (m.rows() != m.cols()) throw InvalidInput("matrix power of a non-square matrix");
  Matrix<T> out = Matrix<T>::identity(m.rows());
  for (std::size_t i = 0; i < e; ++i) out = out * m;
  return out;
}

// Horizontal concatenation; both sides must have the same row count unless one is 0-column.
template <typename T>
Matrix<T> hconcat(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() == 0) return b;
  if (b.cols() == 0) return a;
  if (a.rows() != b.rows()) throw InvalidInput("hconcat: row mismatch");
  Matrix<T> out(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) out(r, a.cols() + c) = b(r, c);
  }
  return out;
}

namespace linalg {

struct RowEchelon {
  RationalMatrix reduced;            // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};

inline RowEchelon rref(RationalMatrix m) {
  RowEchelon out;
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < m.cols() && lead_row < m.rows(); ++c) {
    std::size_t pivot = lead_row;
    while (pivot < m.rows() && m(pivot, c) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != lead_row)
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(pivot, k), m(lead_row, k));
    const Rational inv = 1 / m(lead_row, c);
    for (std::size_t k = c; k < m.cols(); ++k) m(lead_row, k) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead_row || m(r, c) == 0) continue;
      const Rational f = m(r, c);
      for (std::size_t k = c; k < m.cols(); ++k) m(r, k) -= f * m(lead_row, k);
    }
    out.pivots.push_back(c);
    ++lead_row;
  }
  out.reduced = std::move(m);
  return out;
}

inline std::size_t rank(const RationalMatrix& m) { return rref(m).pivots.size(); }
inline std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

// Columns form a basis of the null space of m (a subspace of Q^{m.cols()}).
inline RationalMatrix kernel(const RationalMatrix& m) {
  const auto e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  const std::size_t dim = m.cols() - e.pivots.size();
  RationalMatrix basis(m.cols(), dim);
  std::size_t out_col = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis(free, out_col) = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) basis(e.pivots[i], out_col) = -e.reduced(i, free);
    ++out_col;
  }
  return basis;
}

// Columns form a basis of the column space of m. The basis is the reduced
// echelon form of the transpose, so equal subspaces give equal matrices.
inline RationalMatrix column_space(const RationalMatrix& m) {
  if (m.cols() == 0) return RationalMatrix(m.rows(), 0);
  const auto e = rref(m.transpose());
  RationalMatrix basis(m.rows(), e.pivots.size());
  for (std::size_t i = 0; i < e.pivots.size(); ++i)
    for (std::size_t r = 0; r < m.rows(); ++r) basis(r, i) = e.reduced(i, r);
  return basis;
}

inline RationalMatrix subspace_sum(const RationalMatrix& a, const RationalMatrix& b) {
  return column_space(hconcat(a, b));
}

inline std::size_t span_dim(const RationalMatrix& a) { return a.cols() == 0 ? 0 : rank(a); }

inline bool contains(const RationalMatrix& big, const RationalMatrix& small) {
  return span_dim(hconcat(big, small)) == span_dim(big);
}

inline bool same_subspace(const RationalMatrix& a, const RationalMatrix& b) {
  return span_dim(a) == span_dim(b) && contains(a, b);
}

// Smallest e with m^e = 0, or 0 if m is not nilpotent. The zero 0x0 matrix has index 0.
inline std::size_t nilpotency_index(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("nilpotency of a non-square matrix");
  RationalMatrix p = RationalMatrix::identity(m.rows());
  for (std::size_t e = 0; e <= m.rows(); ++e) {
    if (p.is_zero()) return e;
    p = p * m;
  }
  return 0;
}

inline bool is_nilpotent(const RationalMatrix& m) {
  return m.rows() == 0 || nilpotency_index(m) > 0;
}

}  // namespace linalg
}  // namespace paramod
