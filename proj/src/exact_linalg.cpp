#include "fanolattice/exact_linalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace fanolattice {

namespace {

template <class T>
Matrix<T> multiply_impl(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw LinalgError("multiply: inner dimensions differ");
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

template <class T>
std::vector<T> matvec_impl(const Matrix<T>& m, std::span<const T> v) {
  if (m.cols() != v.size()) throw LinalgError("apply: size mismatch");
  std::vector<T> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

// In-place reduced row echelon form; returns the pivot columns.
std::vector<std::size_t> rref(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && sgn(m(piv, col)) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(piv, c), m(row, c));
    const Rational inv = 1 / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || sgn(m(r, col)) == 0) continue;
      const Rational f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) { return multiply_impl(a, b); }
RatMatrix multiply(const RatMatrix& a, const RatMatrix& b) { return multiply_impl(a, b); }
IntVector matvec(const IntMatrix& m, std::span<const Integer> v) { return matvec_impl(m, v); }
RatVector matvec(const RatMatrix& m, std::span<const Rational> v) { return matvec_impl(m, v); }

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

RatVector to_rational(std::span<const Integer> v) { return RatVector(v.begin(), v.end()); }

Integer dot(std::span<const Integer> a, std::span<const Integer> b) {
  if (a.size() != b.size()) throw LinalgError("dot: size mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw LinalgError("dot: size mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer determinant(const IntMatrix& m) {
  if (!m.is_square()) throw LinalgError("determinant: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && sgn(a(piv, k)) == 0) ++piv;
      if (piv == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(piv, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = std::move(v);
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  Integer det = a(n - 1, n - 1);
  return sign > 0 ? det : Integer(-det);
}

bool is_unimodular(const IntMatrix& m) {
  if (!m.is_square()) throw LinalgError("is_unimodular: matrix is not square");
  return abs(determinant(m)) == 1;
}

HermiteDecomposition hermite_normal_form(const IntMatrix& m) {
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();

  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols; ++c) std::swap(h(a, c), h(b, c));
    for (std::size_t c = 0; c < rows; ++c) std::swap(u(a, c), u(b, c));
  };
  // row[target] -= f * row[source]
  auto add_multiple = [&](std::size_t target, std::size_t source, const Integer& f) {
    if (sgn(f) == 0) return;
    for (std::size_t c = 0; c < cols; ++c) h(target, c) -= f * h(source, c);
    for (std::size_t c = 0; c < rows; ++c) u(target, c) -= f * u(source, c);
  };
  auto negate_row = [&](std::size_t r) {
    for (std::size_t c = 0; c < cols; ++c) h(r, c) = -h(r, c);
    for (std::size_t c = 0; c < rows; ++c) u(r, c) = -u(r, c);
  };

  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    while (true) {
      // Smallest non-zero absolute value at or below `row`; lowest index wins ties.
      std::size_t best = rows;
      for (std::size_t r = row; r < rows; ++r) {
        if (sgn(h(r, col)) == 0) continue;
        if (best == rows || abs(h(r, col)) < abs(h(best, col))) best = r;
      }
      if (best == rows) break;
      swap_rows(row, best);
      bool clean = true;
      for (std::size_t r = row + 1; r < rows; ++r) {
        if (sgn(h(r, col)) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), h(r, col).get_mpz_t(), h(row, col).get_mpz_t());
        add_multiple(r, row, q);
        if (sgn(h(r, col)) != 0) clean = false;
      }
      if (clean) break;
    }
    if (sgn(h(row, col)) == 0) continue;
    if (sgn(h(row, col)) < 0) negate_row(row);
    for (std::size_t r = 0; r < row; ++r) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(r, col).get_mpz_t(), h(row, col).get_mpz_t());
      add_multiple(r, row, q);
    }
    ++row;
  }
  return {std::move(h), std::move(u)};
}

std::size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  return rref(a).size();
}

std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

std::vector<RatVector> nullspace(const RatMatrix& m) {
  RatMatrix a = m;
  const auto pivots = rref(a);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RatVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RatVector v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatVector> rational_solve(const RatMatrix& a, std::span<const Rational> b) {
  if (a.rows() != b.size()) throw LinalgError("rational_solve: right-hand side size mismatch");
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  RatVector x(a.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, a.cols());
  return x;
}

RatMatrix inverse(const RatMatrix& m) {
  if (!m.is_square()) throw LinalgError("inverse: matrix is not square");
  const std::size_t n = m.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw LinalgError("inverse: matrix is singular");
  RatMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

std::size_t fixed_space_dimension(std::span<const IntMatrix> mats) {
  if (mats.empty()) throw LinalgError("fixed_space_dimension: no matrices");
  const std::size_t n = mats.front().rows();
  RatMatrix stacked(n * mats.size(), n);
  for (std::size_t g = 0; g < mats.size(); ++g) {
    const auto& m = mats[g];
    if (m.rows() != n || m.cols() != n)
      throw LinalgError("fixed_space_dimension: matrices must be square of equal size");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) stacked(g * n + i, j) = m(i, j) - (i == j ? 1 : 0);
  }
  return n - rank(stacked);
}

Integer gcd_of(std::span<const Integer> v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

bool is_primitive(std::span<const Integer> v) { return gcd_of(v) == 1; }

IntVector primitive_direction(std::span<const Rational> v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational s = v[i] * l;
    out[i] = s.get_num();
  }
  Integer g = gcd_of(out);
  if (sgn(g) == 0) throw LinalgError("primitive_direction: zero vector");
  for (auto& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return out;
}

std::string to_string(std::span<const Integer> v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

std::string to_string(std::span<const Rational> v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

}  // namespace fanolattice
