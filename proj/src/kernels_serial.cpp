#include "kernels_common.hpp"

namespace kusuoka::kernels::serial {

template <class T>
std::vector<Matrix<T>> word_matrix_table(const MatrixSystem<T>& sys, std::size_t k,
                                         std::size_t budget) {
  word_count(sys.size(), k, budget);
  std::vector<Matrix<T>> level{Matrix<T>::identity(sys.dim())};
  for (std::size_t j = 0; j < k; ++j) level = extend_level(sys, level);
  return level;
}

template <class T>
std::vector<T> nu_table(const MatrixSystem<T>& sys, const std::vector<Matrix<T>>& words) {
  std::vector<T> out;
  out.reserve(words.size());
  for (const auto& a : words) out.push_back(detail::nu_of(sys, a));
  return out;
}

template <class T>
Matrix<T> gram_form(const MatrixSystem<T>& sys, const std::vector<Matrix<T>>& words,
                    const std::vector<Matrix<T>>& basis) {
  std::vector<std::vector<T>> rows;
  rows.reserve(words.size());
  for (const auto& a : words) rows.push_back(detail::gram_row(sys, a, basis));
  return detail::accumulate_gram(rows, basis.size());
}

template <class T>
std::vector<T> sandwich_traces(const std::vector<Matrix<T>>& outer,
                               const std::vector<Matrix<T>>& mid) {
  std::vector<T> out;
  out.reserve(outer.size() * mid.size());
  for (const auto& o : outer)
    for (const auto& m : mid) out.push_back(detail::sandwich(o, m));
  return out;
}

template <class T>
std::vector<Matrix<T>> extend_level(const MatrixSystem<T>& sys,
                                    const std::vector<Matrix<T>>& values) {
  std::vector<Matrix<T>> out;
  out.reserve(values.size() * sys.size());
  for (const auto& v : values)
    for (const auto& a : sys.maps()) out.push_back(a * v);
  return out;
}

#define KUSUOKA_INSTANTIATE(T)                                                                    \
  template std::vector<Matrix<T>> word_matrix_table(const MatrixSystem<T>&, std::size_t,         \
                                                    std::size_t);                                \
  template std::vector<T> nu_table(const MatrixSystem<T>&, const std::vector<Matrix<T>>&);       \
  template Matrix<T> gram_form(const MatrixSystem<T>&, const std::vector<Matrix<T>>&,            \
                               const std::vector<Matrix<T>>&);                                   \
  template std::vector<T> sandwich_traces(const std::vector<Matrix<T>>&,                         \
                                          const std::vector<Matrix<T>>&);                        \
  template std::vector<Matrix<T>> extend_level(const MatrixSystem<T>&,                           \
                                               const std::vector<Matrix<T>>&);

KUSUOKA_INSTANTIATE(double)
KUSUOKA_INSTANTIATE(Surd)

}  // namespace kusuoka::kernels::serial
