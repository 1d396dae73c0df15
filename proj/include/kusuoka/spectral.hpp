#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "kusuoka/matsys.hpp"

namespace kusuoka {

struct Theta1Result {
  Certified theta1;
  std::vector<std::complex<double>> symmetric_eigenvalues;      // on the E-complement of I
  std::vector<std::complex<double>> antisymmetric_eigenvalues;
  /// Certified rational eigenvalues found on either subspace.
  std::vector<mpq_class> rational_eigenvalues;
  bool irreducible = true;  // false when theta1 = 1 is detected
};

/// Spectral radius of M on the E-orthogonal complement of I (symmetric and antisymmetric
/// parts). Exact when the radius is attained at a certified rational root of the exact
/// characteristic polynomial.
template <class T>
Theta1Result theta1(const MatrixSystem<T>& sys);

/// Operator norm of M on traceless-symmetric matrices in the Schatten p-norm. Exact when M is a
/// scalar on that subspace. Otherwise a search: in dimension 2, a 3600-point angle grid refined
/// by golden-section search; in higher dimension, 20000 seeded random directions each refined
/// by coordinate perturbation. Requires symmetric maps.
template <class T>
Certified theta1_schatten(const MatrixSystem<T>& sys, double p);

struct CkResult {
  bool applicable = false;  // false when there are no traceless-symmetric directions (d = 1)
  Certified value;
};

/// min over symmetric F with <F, I>_E = 0 and ||F||_E = 1 of sum_{|alpha| = k} <A F, A>_E^2,
/// computed as the least generalized eigenvalue of the Gram form against the E-Gram matrix.
template <class T>
CkResult c_k(const MatrixSystem<T>& sys, std::size_t k,
             std::size_t budget = kDefaultWordBudget);

struct Theta2Result {
  Certified theta2_thm;    // min over k <= k_max of (1 - c_k)^(1/k)
  Certified theta2_lemma;  // sqrt(1 - c_1)
  std::vector<CkResult> c;  // c[k - 1]
  bool irreducible = true;
  std::string note;
};

template <class T>
Theta2Result theta2(const MatrixSystem<T>& sys, std::size_t k_max,
                    std::size_t budget = kDefaultWordBudget);

/// Perron data for the raw maps and the renormalized system.
template <class T>
struct Renormalization {
  T mu;                // common Perron eigenvalue of B -> sum A^T B A and B -> sum A B A^T
  Matrix<T> energy0;   // Perron form of the first map (unnormalized)
  Matrix<T> dual0;     // Perron form of the second map, scaled to trace d
  Matrix<T> basis;     // L with L L^T = dual0
  MatrixSystem<T> system;
};

/// Rescales by mu^(-1/2) and changes basis by the Cholesky factor of the dual form so that
/// both fixed-point equations hold, with Tr E = 1. The exact backend needs a rational Perron
/// root and rational Cholesky pivots; it raises MathError otherwise.
template <class T>
Renormalization<T> renormalize(const Alphabet& alphabet, const std::vector<Matrix<T>>& raw_maps);

/// Float power iteration on B -> sum A^T B A (dual = false) or sum A B A^T (dual = true) from I.
/// Returns (eigenvalue, unit-Frobenius eigenvector).
std::pair<double, Matrix<double>> perron_power_iteration(const std::vector<Matrix<double>>& maps,
                                                         bool dual, double tol = 1e-14,
                                                         long max_iter = 100000);

}  // namespace kusuoka
