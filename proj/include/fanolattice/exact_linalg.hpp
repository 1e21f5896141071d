#pragma once

// Exact integer and rational linear algebra. Everything here is backed by GMP
// so that no intermediate quantity can overflow; there is no floating point.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fanolattice {

using Integer = mpz_class;
using Rational = mpq_class;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

class LinalgError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense row-major matrix. Sizes are tiny (n <= 8, at most a few dozen rows),
/// so there is no attempt at blocking or sparsity.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<long>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(std::span<const std::vector<T>> rows, std::size_t cols);
  static Matrix from_columns(std::span<const std::vector<T>> cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> row(std::size_t r) const;
  std::vector<T> column(std::size_t c) const;
  Matrix transposed() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

template <class T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw LinalgError("ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

template <class T>
Matrix<T> Matrix<T>::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

template <class T>
Matrix<T> Matrix<T>::from_rows(std::span<const std::vector<T>> rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw LinalgError("row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

template <class T>
Matrix<T> Matrix<T>::from_columns(std::span<const std::vector<T>> cols, std::size_t rows) {
  Matrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw LinalgError("column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

template <class T>
std::vector<T> Matrix<T>::row(std::size_t r) const {
  return std::vector<T>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

template <class T>
std::vector<T> Matrix<T>::column(std::size_t c) const {
  std::vector<T> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

template <class T>
Matrix<T> Matrix<T>::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
RatMatrix multiply(const RatMatrix& a, const RatMatrix& b);
IntVector matvec(const IntMatrix& m, std::span<const Integer> v);
RatVector matvec(const RatMatrix& m, std::span<const Rational> v);

RatMatrix to_rational(const IntMatrix& m);
RatVector to_rational(std::span<const Integer> v);

Integer dot(std::span<const Integer> a, std::span<const Integer> b);
Rational dot(std::span<const Rational> a, std::span<const Rational> b);

/// Fraction-free (Bareiss) determinant.
Integer determinant(const IntMatrix& m);

bool is_unimodular(const IntMatrix& m);

/// Result of a Hermite reduction: transform * input == hermite.
struct HermiteDecomposition {
  IntMatrix hermite;
  IntMatrix transform;
};

/// Row-operation Hermite normal form. H is in echelon form, every pivot is
/// positive and the entries above a pivot lie in [0, pivot). U is unimodular.
/// Pivot selection is deterministic (smallest absolute value, lowest row on
/// ties), so the output depends only on the input.
HermiteDecomposition hermite_normal_form(const IntMatrix& m);

std::size_t rank(const RatMatrix& m);
std::size_t rank(const IntMatrix& m);

/// Basis of the right kernel {x : m x = 0}, in reduced row echelon order.
std::vector<RatVector> nullspace(const RatMatrix& m);

/// Solves A x = b. Returns std::nullopt when the system is inconsistent; when
/// the solution is not unique the free variables are set to zero.
std::optional<RatVector> rational_solve(const RatMatrix& a, std::span<const Rational> b);

/// Inverse of a non-singular square matrix.
RatMatrix inverse(const RatMatrix& m);

/// dim_Q of the common fixed space of all matrices, i.e. the kernel of the
/// stacked matrix of all (g - I).
std::size_t fixed_space_dimension(std::span<const IntMatrix> mats);

Integer gcd_of(std::span<const Integer> v);
bool is_primitive(std::span<const Integer> v);

/// Scales a non-zero rational vector to the unique primitive integer vector
/// with the same direction.
IntVector primitive_direction(std::span<const Rational> v);

std::string to_string(std::span<const Integer> v);
std::string to_string(std::span<const Rational> v);

}  // namespace fanolattice
