#pragma once

#include <random>
#include <vector>

#include "kusuoka/field.hpp"
#include "kusuoka/matsys.hpp"

namespace kusuoka::test {

inline SystemPtr<Surd> sg_exact() {
  static const auto sys = std::make_shared<const MatrixSystem<Surd>>(builtin_sg<Surd>());
  return sys;
}

inline SystemPtr<double> sg_float() {
  static const auto sys = std::make_shared<const MatrixSystem<double>>(builtin_sg<double>());
  return sys;
}

inline Surd q(long num, long den = 1) { return Surd(mpq_class(num, den)); }

/// Random rational in [-1, 1] with denominator `den`.
inline mpq_class random_rational(std::mt19937_64& rng, long den = 10) {
  std::uniform_int_distribution<long> dist(-den, den);
  mpq_class v(dist(rng), den);
  v.canonicalize();
  return v;
}

template <class T>
T random_scalar(std::mt19937_64& rng) {
  if constexpr (Field<T>::exact) return Surd(random_rational(rng));
  else return std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
}

template <class T>
Matrix<T> random_matrix(std::mt19937_64& rng, std::size_t d) {
  Matrix<T> m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = random_scalar<T>(rng);
  return m;
}

template <class T>
Matrix<T> random_symmetric(std::mt19937_64& rng, std::size_t d) {
  Matrix<T> m = random_matrix<T>(rng, d);
  return m + m.transpose();
}

/// Plain triple-loop product on nested vectors, independent of the library's Matrix product.
template <class T>
std::vector<std::vector<T>> naive_mul(const std::vector<std::vector<T>>& a,
                                      const std::vector<std::vector<T>>& b) {
  std::vector<std::vector<T>> c(a.size(), std::vector<T>(b[0].size(), T(0)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

template <class T>
std::vector<std::vector<T>> nested(const Matrix<T>& m) {
  std::vector<std::vector<T>> out(m.rows(), std::vector<T>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

/// nu(word) by direct products: A = A_{w_n} ... A_{w_1}, then sum_{ij} (E A)_{ij} A_{ij}.
template <class T>
T naive_nu(const MatrixSystem<T>& sys, const Word& w) {
  const std::size_t d = sys.dim();
  std::vector<std::vector<T>> a(d, std::vector<T>(d, T(0)));
  for (std::size_t i = 0; i < d; ++i) a[i][i] = T(1);
  for (Symbol s : w) a = naive_mul(nested(sys.map(s)), a);
  auto ea = naive_mul(nested(sys.energy()), a);
  T sum(0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) sum += ea[i][j] * a[i][j];
  return sum;
}

}  // namespace kusuoka::test
