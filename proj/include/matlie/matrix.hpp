#pragma once

// Dense exact matrices over a runtime Field.
//
// Element access is 0-based like any container. The generator factories
// (matrix_unit, shift_matrix, ...) use the 1-based E(i,j) indexing of the
// math they implement.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "matlie/error.hpp"
#include "matlie/field.hpp"

namespace matlie {

class Matrix {
 public:
  Matrix() = default;

  /// Zero matrix.
  Matrix(Field field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<Elem> data)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw Error(Errc::DimensionMismatch, "entry count does not match shape");
  }

  static Matrix identity(const Field& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  static Matrix from_ints(const Field& field, std::initializer_list<std::initializer_list<long long>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.begin()->size() : 0;
    Matrix m(field, r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw Error(Errc::DimensionMismatch, "ragged rows");
      std::size_t j = 0;
      for (long long v : row) m(i, j++) = field.from_int(v);
      ++i;
    }
    return m;
  }

  /// Column vector with the given entries.
  static Matrix column(const Field& field, std::vector<Elem> entries) {
    const auto n = entries.size();
    return Matrix(field, n, 1, std::move(entries));
  }

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Elem& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Scalar entry(std::size_t i, std::size_t j) const {
    check_index(i, j);
    return {field_, (*this)(i, j)};
  }
  void set(std::size_t i, std::size_t j, const Scalar& v) {
    check_index(i, j);
    if (!(v.field() == field_)) throw Error(Errc::FieldMismatch, "entry field differs from matrix field");
    (*this)(i, j) = v.value();
  }

  /// Row-major entries; this is also the project-wide vectorization.
  std::span<const Elem> data() const { return data_; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [&](const Elem& e) { return field_.is_zero(e); });
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] = field_.add(data_[k], o.data_[k]);
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] = field_.sub(data_[k], o.data_[k]);
    return *this;
  }
  Matrix& operator*=(const Scalar& s) {
    if (!(s.field() == field_)) throw Error(Errc::FieldMismatch, "scalar field differs from matrix field");
    for (auto& e : data_) e = field_.mul(s.value(), e);
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }
  friend Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }

  Matrix operator-() const {
    Matrix out = *this;
    for (auto& e : out.data_) e = field_.neg(e);
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (!(a.field_ == b.field_)) throw Error(Errc::FieldMismatch, "matrix product over different fields");
    if (a.cols_ != b.rows_) throw Error(Errc::DimensionMismatch, "inner dimensions differ");
    const Field& f = a.field_;
    Matrix out(f, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Elem& aik = a(i, k);
        if (f.is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const Elem& bkj = b(k, j);
          if (f.is_zero(bkj)) continue;
          out(i, j) = f.add(out(i, j), f.mul(aik, bkj));
        }
      }
    return out;
  }

  bool operator==(const Matrix& o) const {
    if (!(field_ == o.field_) || rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t k = 0; k < data_.size(); ++k)
      if (!field_.equal(data_[k], o.data_[k])) return false;
    return true;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? ", [" : "[";
      for (std::size_t j = 0; j < cols_; ++j) s += (j ? ", " : "") + field_.format((*this)(i, j));
      s += "]";
    }
    return s + "]";
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) { return os << m.to_string(); }

 private:
  void check_same_shape(const Matrix& o) const {
    if (!(field_ == o.field_)) throw Error(Errc::FieldMismatch, "matrices over different fields");
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(Errc::DimensionMismatch, "shapes differ");
  }
  void check_index(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw Error(Errc::IndexOutOfRange, "entry index out of range");
  }

  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

// Standard generators ------------------------------------------------------

/// E(i,j) in M_n, 1-based.
inline Matrix matrix_unit(const Field& field, std::size_t n, std::size_t i, std::size_t j) {
  if (i < 1 || j < 1 || i > n || j > n)
    throw Error(Errc::IndexOutOfRange, "E(" + std::to_string(i) + "," + std::to_string(j) + ") outside M_" +
                                           std::to_string(n));
  Matrix m(field, n, n);
  m(i - 1, j - 1) = field.one();
  return m;
}

/// S = E(1,2) + E(2,3) + ... + E(n-1,n).
inline Matrix shift_matrix(const Field& field, std::size_t n) {
  if (n < 1) throw Error(Errc::IndexOutOfRange, "n must be >= 1");
  Matrix m(field, n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) m(i, i + 1) = field.one();
  return m;
}

/// P = S + E(n,1), the cyclic permutation matrix.
inline Matrix cyclic_permutation(const Field& field, std::size_t n) {
  Matrix m = shift_matrix(field, n);
  m(n - 1, 0) = field.add(m(n - 1, 0), field.one());
  return m;
}

inline Matrix scalar_matrix(const Scalar& s, std::size_t n) {
  Matrix m(s.field(), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = s.value();
  return m;
}

// Elementary operations ----------------------------------------------------

inline Matrix transpose(const Matrix& x) {
  Matrix out(x.field(), x.cols(), x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) out(j, i) = x(i, j);
  return out;
}

inline Scalar trace(const Matrix& x) {
  if (!x.is_square()) throw Error(Errc::DimensionMismatch, "trace of a non-square matrix");
  const Field& f = x.field();
  Elem t = f.zero();
  for (std::size_t i = 0; i < x.rows(); ++i) t = f.add(t, x(i, i));
  return {f, t};
}

/// X^e by repeated squaring; X^0 = I.
inline Matrix power(Matrix base, std::size_t e) {
  if (!base.is_square()) throw Error(Errc::DimensionMismatch, "power of a non-square matrix");
  Matrix result = Matrix::identity(base.field(), base.rows());
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

/// Some c with X = c*I, if X is a scalar matrix.
inline std::optional<Scalar> scalar_value(const Matrix& x) {
  if (!x.is_square() || x.rows() == 0) return std::nullopt;
  const Field& f = x.field();
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) {
      if (i == j) {
        if (!f.equal(x(i, i), x(0, 0))) return std::nullopt;
      } else if (!f.is_zero(x(i, j))) {
        return std::nullopt;
      }
    }
  return Scalar{f, x(0, 0)};
}

/// X_f: the field automorphism applied to every entry.
inline Matrix entrywise_map(const Matrix& x, const FieldAutomorphism& f) {
  f.check_compatible(x.field());
  if (f.is_identity()) return x;
  Matrix out(x.field(), x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) out(i, j) = f.apply(x.field(), x(i, j));
  return out;
}

/// [[U,P],[Q,V]] -> [[V^T,-P^T],[-Q^T,U^T]] with m x m blocks on M_{2m}.
inline Matrix symplectic_involution(const Matrix& x) {
  if (!x.is_square()) throw Error(Errc::DimensionMismatch, "symplectic involution needs a square matrix");
  if (x.rows() % 2) throw Error(Errc::OddDimension, "symplectic involution needs even size");
  const std::size_t m = x.rows() / 2;
  const Field& f = x.field();
  Matrix out(f, x.rows(), x.cols());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      out(i, j) = x(m + j, m + i);                // V^T
      out(i, m + j) = f.neg(x(j, m + i));         // -P^T
      out(m + i, j) = f.neg(x(m + j, i));         // -Q^T
      out(m + i, m + j) = x(j, i);                // U^T
    }
  return out;
}

// Elimination --------------------------------------------------------------

struct RrefResult {
  Matrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;  // 0-based
};

/// Gauss-Jordan elimination; the pivot is the first nonzero entry found
/// scanning down the current column.
inline RrefResult rref(Matrix x) {
  const Field& f = x.field();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < x.cols() && row < x.rows(); ++col) {
    std::size_t piv = row;
    while (piv < x.rows() && f.is_zero(x(piv, col))) ++piv;
    if (piv == x.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < x.cols(); ++j) std::swap(x(piv, j), x(row, j));
    const Elem scale = f.inv(x(row, col));
    for (std::size_t j = col; j < x.cols(); ++j) x(row, j) = f.mul(scale, x(row, j));
    for (std::size_t i = 0; i < x.rows(); ++i) {
      if (i == row || f.is_zero(x(i, col))) continue;
      const Elem factor = x(i, col);
      for (std::size_t j = col; j < x.cols(); ++j)
        if (!f.is_zero(x(row, j))) x(i, j) = f.sub(x(i, j), f.mul(factor, x(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(x), row, std::move(pivots)};
}

inline std::size_t rank(const Matrix& x) { return rref(x).rank; }

/// Parametric null-space basis: one column vector per free column (in
/// increasing order) with that free variable set to 1 and the others to 0.
inline std::vector<Matrix> null_space_basis(const Matrix& x) {
  const auto r = rref(x);
  const Field& f = x.field();
  std::vector<bool> is_pivot(x.cols(), false);
  for (auto c : r.pivot_cols) is_pivot[c] = true;
  std::vector<Matrix> basis;
  for (std::size_t free = 0; free < x.cols(); ++free) {
    if (is_pivot[free]) continue;
    Matrix v(f, x.cols(), 1);
    v(free, 0) = f.one();
    for (std::size_t i = 0; i < r.rank; ++i) v(r.pivot_cols[i], 0) = f.neg(r.reduced(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

/// X^{-1}; the product X * X^{-1} = I is checked before returning.
inline Matrix inverse(const Matrix& x) {
  if (!x.is_square()) throw Error(Errc::DimensionMismatch, "inverse of a non-square matrix");
  const std::size_t n = x.rows();
  const Field& f = x.field();
  Matrix aug(f, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = x(i, j);
    aug(i, n + i) = f.one();
  }
  auto r = rref(std::move(aug));
  if (r.rank < n || r.pivot_cols[n - 1] != n - 1) throw Error(Errc::SingularMatrix, "matrix is not invertible");
  Matrix inv(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.reduced(i, n + j);
  if (!(x * inv == Matrix::identity(f, n))) throw Error(Errc::SingularMatrix, "inverse check failed");
  return inv;
}

inline Matrix column_of(const Matrix& x, std::size_t j) {
  Matrix v(x.field(), x.rows(), 1);
  for (std::size_t i = 0; i < x.rows(); ++i) v(i, 0) = x(i, j);
  return v;
}

}  // namespace matlie
