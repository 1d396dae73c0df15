#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "kusuoka/errors.hpp"
#include "kusuoka/field.hpp"
#include "kusuoka/matrix.hpp"

namespace kusuoka {

namespace detail {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

template <class T>
double max_abs(const Matrix<T>& m) {
  double s = 0.0;
  for (const auto& x : m.data()) s = std::max(s, std::fabs(Field<T>::to_double(x)));
  return s;
}

// Exact backend: first nonzero entry. Float backend: partial pivoting with a relative cutoff.
template <class T>
std::size_t pick_pivot(const Matrix<T>& m, std::size_t col, std::size_t from, double cutoff) {
  if constexpr (Field<T>::exact) {
    for (std::size_t r = from; r < m.rows(); ++r)
      if (!Field<T>::is_zero(m(r, col))) return r;
    return npos;
  } else {
    std::size_t best = npos;
    double best_abs = cutoff;
    for (std::size_t r = from; r < m.rows(); ++r) {
      double v = std::fabs(m(r, col));
      if (v > best_abs) {
        best = r;
        best_abs = v;
      }
    }
    return best;
  }
}

template <class T>
void swap_rows(Matrix<T>& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

}  // namespace detail

/// Reduced row echelon form in place; returns the pivot columns.
template <class T>
std::vector<std::size_t> rref(Matrix<T>& m) {
  const double cutoff = Field<T>::exact ? 0.0 : 1e-12 * std::max(1.0, detail::max_abs(m));
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = detail::pick_pivot(m, col, row, cutoff);
    if (p == detail::npos) {
      if constexpr (!Field<T>::exact)
        for (std::size_t r = row; r < m.rows(); ++r) m(r, col) = 0.0;
      continue;
    }
    detail::swap_rows(m, row, p);
    T inv = T(1) / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || Field<T>::is_zero(m(r, col))) continue;
      T f = m(r, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(r, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

/// Basis of {x : a x = 0}, one vector per free column.
template <class T>
std::vector<std::vector<T>> nullspace(Matrix<T> a) {
  auto pivots = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(a.cols(), T(0));
    v[free] = T(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves a x = b for square a; throws MathError when a is singular.
template <class T>
Matrix<T> solve(const Matrix<T>& a, const Matrix<T>& b) {
  if (!a.is_square() || a.rows() != b.rows()) throw DimensionError("solve: shape mismatch");
  const std::size_t n = a.rows();
  Matrix<T> aug(n, n + b.cols());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) aug(i, n + j) = b(i, j);
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) throw MathError("singular matrix");
  Matrix<T> x(n, b.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(i, j) = aug(i, n + j);
  return x;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& a) {
  return solve(a, Matrix<T>::identity(a.rows()));
}

template <class T>
T determinant(Matrix<T> m) {
  if (!m.is_square()) throw DimensionError("determinant needs a square matrix");
  const std::size_t n = m.rows();
  T det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = detail::pick_pivot(m, col, col, 0.0);
    if (p == detail::npos) return T(0);
    if (p != col) {
      detail::swap_rows(m, col, p);
      det = -det;
    }
    det *= m(col, col);
    T inv = T(1) / m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (Field<T>::is_zero(m(r, col))) continue;
      T f = m(r, col) * inv;
      for (std::size_t j = col; j < n; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return det;
}

/// Characteristic polynomial det(xI - a), coefficients from constant term up (monic).
/// Faddeev-LeVerrier recursion; valid over any field of characteristic zero.
template <class T>
std::vector<T> charpoly(const Matrix<T>& a) {
  if (!a.is_square()) throw DimensionError("charpoly needs a square matrix");
  const std::size_t n = a.rows();
  std::vector<T> c(n + 1, T(0));
  c[n] = T(1);
  Matrix<T> mk(n, n);
  const auto id = Matrix<T>::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = a * mk + id * c[n - k + 1];
    c[n - k] = -trace_product(a, mk) / T(static_cast<long>(k));
  }
  return c;
}

/// Lower-triangular l with l * l^T = a for symmetric positive definite a.
template <class T>
Matrix<T> cholesky(const Matrix<T>& a) {
  if (!a.is_square()) throw DimensionError("cholesky needs a square matrix");
  const std::size_t n = a.rows();
  Matrix<T> l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    T d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (Field<T>::sign(d) <= 0)
      throw NotPositiveDefinite("cholesky: nonpositive pivot", Field<T>::to_double(d));
    l(j, j) = Field<T>::sqrt(d);
    T inv = T(1) / l(j, j);
    for (std::size_t i = j + 1; i < n; ++i) {
      T s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s * inv;
    }
  }
  return l;
}

template <class T>
Matrix<T> principal_submatrix(const Matrix<T>& a, const std::vector<std::size_t>& idx) {
  Matrix<T> s(idx.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) s(i, j) = a(idx[i], idx[j]);
  return s;
}

/// Sylvester's criterion on leading principal minors.
template <class T>
bool leading_minors_positive(const Matrix<T>& a) {
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < a.rows(); ++k) {
    idx.push_back(k);
    if (Field<T>::sign(determinant(principal_submatrix(a, idx))) <= 0) return false;
  }
  return true;
}

/// Symmetric a is positive semidefinite iff every principal minor is nonnegative.
template <class T>
bool principal_minors_nonnegative(const Matrix<T>& a) {
  const std::size_t n = a.rows();
  if (n > 20) throw BudgetExceeded("principal minor test limited to dimension 20");
  for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1ul << i)) idx.push_back(i);
    if (Field<T>::sign(determinant(principal_submatrix(a, idx))) < 0) return false;
  }
  return true;
}

inline Eigen::MatrixXd to_eigen(const Matrix<double>& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

template <class T>
std::vector<std::complex<double>> eigenvalues(const Matrix<T>& m) {
  if (m.rows() == 0) return {};
  Eigen::EigenSolver<Eigen::MatrixXd> es(to_eigen(to_double(m)), false);
  std::vector<std::complex<double>> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

/// Ascending eigenvalues of the symmetric part of m.
template <class T>
std::vector<double> symmetric_eigenvalues(const Matrix<T>& m) {
  if (m.rows() == 0) return {};
  Eigen::MatrixXd e = to_eigen(to_double(m));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (e + e.transpose()),
                                                    Eigen::EigenvaluesOnly);
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

template <class T>
std::vector<double> singular_values(const Matrix<T>& m) {
  if (m.rows() == 0) return {};
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(to_double(m)));
  return {svd.singularValues().data(), svd.singularValues().data() + svd.singularValues().size()};
}

}  // namespace kusuoka
