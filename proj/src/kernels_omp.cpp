#include <omp.h>

#include <cstdlib>

#include "kernels_common.hpp"

namespace kusuoka::kernels {

int thread_cap() {
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("KUSUOKA_THREADS")) {
    int v = std::atoi(env);
    if (v > 0 && v < n) n = v;
  }
  return n;
}

namespace omp {

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
  std::vector<T> out(words.size());
  const long n = static_cast<long>(words.size());
#pragma omp parallel for schedule(static) num_threads(thread_cap())
  for (long i = 0; i < n; ++i) out[i] = detail::nu_of(sys, words[i]);
  return out;
}

template <class T>
Matrix<T> gram_form(const MatrixSystem<T>& sys, const std::vector<Matrix<T>>& words,
                    const std::vector<Matrix<T>>& basis) {
  std::vector<std::vector<T>> rows(words.size());
  const long n = static_cast<long>(words.size());
#pragma omp parallel for schedule(static) num_threads(thread_cap())
  for (long i = 0; i < n; ++i) rows[i] = detail::gram_row(sys, words[i], basis);
  return detail::accumulate_gram(rows, basis.size());
}

template <class T>
std::vector<T> sandwich_traces(const std::vector<Matrix<T>>& outer,
                               const std::vector<Matrix<T>>& mid) {
  std::vector<T> out(outer.size() * mid.size());
  const long n = static_cast<long>(out.size());
  const std::size_t m = mid.size();
#pragma omp parallel for schedule(static) num_threads(thread_cap())
  for (long i = 0; i < n; ++i) out[i] = detail::sandwich(outer[i / m], mid[i % m]);
  return out;
}

template <class T>
std::vector<Matrix<T>> extend_level(const MatrixSystem<T>& sys,
                                    const std::vector<Matrix<T>>& values) {
  const std::size_t s = sys.size();
  std::vector<Matrix<T>> out(values.size() * s);
  const long n = static_cast<long>(out.size());
#pragma omp parallel for schedule(static) num_threads(thread_cap())
  for (long i = 0; i < n; ++i) out[i] = sys.map(i % s) * values[i / s];
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

}  // namespace omp
}  // namespace kusuoka::kernels
