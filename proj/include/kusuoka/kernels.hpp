#pragma once

#include <cstddef>
#include <vector>

#include "kusuoka/matsys.hpp"

// Table-building kernels over S^k. `serial` is the reference; `omp` splits the same per-word
// work across threads and combines partial results in lexicographic order, so both produce
// identical output on either backend.
namespace kusuoka::kernels {

/// Thread cap from KUSUOKA_THREADS, else the OpenMP default.
int thread_cap();

#define KUSUOKA_KERNEL_DECLS                                                                   \
  /* A(alpha) for all alpha in S^k, lexicographic. */                                          \
  template <class T>                                                                           \
  std::vector<Matrix<T>> word_matrix_table(const MatrixSystem<T>& sys, std::size_t k,          \
                                           std::size_t budget = kDefaultWordBudget);           \
  /* nu(alpha) = Tr(A(alpha)^T E A(alpha)) for a table of word matrices. */                    \
  template <class T>                                                                           \
  std::vector<T> nu_table(const MatrixSystem<T>& sys, const std::vector<Matrix<T>>& words);    \
  /* G(i, j) = sum_alpha <A b_i, A>_E <A b_j, A>_E over the word table. */                     \
  template <class T>                                                                           \
  Matrix<T> gram_form(const MatrixSystem<T>& sys, const std::vector<Matrix<T>>& words,         \
                      const std::vector<Matrix<T>>& basis);                                    \
  /* out[i * |mid| + j] = Tr(outer_i^T mid_j outer_i). */                                      \
  template <class T>                                                                           \
  std::vector<T> sandwich_traces(const std::vector<Matrix<T>>& outer,                          \
                                 const std::vector<Matrix<T>>& mid);                           \
  /* children[i * |S| + s] = A_s values[i]. */                                                 \
  template <class T>                                                                           \
  std::vector<Matrix<T>> extend_level(const MatrixSystem<T>& sys,                              \
                                      const std::vector<Matrix<T>>& values);

namespace serial {
KUSUOKA_KERNEL_DECLS
}  // namespace serial

namespace omp {
KUSUOKA_KERNEL_DECLS
}  // namespace omp

#undef KUSUOKA_KERNEL_DECLS

using omp::extend_level;
using omp::gram_form;
using omp::nu_table;
using omp::sandwich_traces;
using omp::word_matrix_table;

}  // namespace kusuoka::kernels
