#pragma once

#include "kusuoka/kernels.hpp"

namespace kusuoka::kernels::detail {

template <class T>
T nu_of(const MatrixSystem<T>& sys, const Matrix<T>& a) {
  return trace_product(a.transpose(), sys.energy() * a);
}

// <A b_i, A>_E = Tr(A^T E A b_i) for each basis element.
template <class T>
std::vector<T> gram_row(const MatrixSystem<T>& sys, const Matrix<T>& a,
                        const std::vector<Matrix<T>>& basis) {
  Matrix<T> pulled = a.transpose() * sys.energy() * a;
  std::vector<T> v;
  v.reserve(basis.size());
  for (const auto& b : basis) v.push_back(trace_product(pulled, b));
  return v;
}

template <class T>
Matrix<T> accumulate_gram(const std::vector<std::vector<T>>& rows, std::size_t n) {
  Matrix<T> g(n, n);
  for (const auto& v : rows)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g(i, j) += v[i] * v[j];
  return g;
}

template <class T>
T sandwich(const Matrix<T>& outer, const Matrix<T>& mid) {
  return trace_product(outer.transpose(), mid * outer);
}

}  // namespace kusuoka::kernels::detail
