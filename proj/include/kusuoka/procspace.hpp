#pragma once

#include <cstdint>
#include <vector>

#include "kusuoka/measure.hpp"

namespace kusuoka {

/// Operator-valued process of finite degree n, stored on S^n. Values at higher levels follow
/// F(alpha s) = A_s F(alpha).
template <class T>
struct FiniteProcess {
  SystemPtr<T> system;
  std::size_t degree = 0;
  std::vector<Matrix<T>> values;  // lexicographic over S^degree

  /// The process A(alpha) (degree 0, value I).
  static FiniteProcess identity(SystemPtr<T> sys);
  /// The degree-0 process A(alpha) g0.
  static FiniteProcess constant(SystemPtr<T> sys, const Matrix<T>& g0);

  /// Table of values on S^level, level >= degree.
  std::vector<Matrix<T>> at_level(std::size_t level,
                                  std::size_t budget = kDefaultWordBudget) const;
  /// Same process re-stored at a higher degree.
  FiniteProcess extend(std::size_t level, std::size_t budget = kDefaultWordBudget) const;
};

/// (F|G) = sum over S^n of <F(alpha), G(alpha)>_E with n = max degree.
template <class T>
T process_inner(const FiniteProcess<T>& f, const FiniteProcess<T>& g);

/// (TF)(s alpha) = F(alpha) A_s; degree + 1.
template <class T>
FiniteProcess<T> shift_T(const FiniteProcess<T>& f);

/// (LF)(alpha) = sum_s F(s alpha) A_s^T; degree - 1 (degree-0 input is extended first).
template <class T>
FiniteProcess<T> transfer_L(const FiniteProcess<T>& f);

/// Phi(f)(alpha) = f(alpha) A(alpha).
template <class T>
FiniteProcess<T> embed_phi(SystemPtr<T> sys, const CylinderFunction<T>& f);

/// Martingale differences of a function: component j is a depth-j table, component 0 the mean.
template <class T>
struct MartingaleRep {
  std::vector<CylinderFunction<T>> components;
  std::vector<T> norms2;  // ||f^(j)||^2 in L^2(nu)

  std::size_t depth() const { return components.empty() ? 0 : components.size() - 1; }
  T total_norm2() const;
};

/// f^(0) = integral of f, f^(j)(alpha) = E[f | alpha] - E[f | parent(alpha)].
template <class T>
MartingaleRep<T> martingale_decompose(const KusuokaMeasure<T>& m, const CylinderFunction<T>& f,
                                      std::size_t budget = kDefaultWordBudget);

/// q(alpha) = nu(alpha)^{-1} <F(alpha), A(alpha)>_E, evaluated at level max(level, degree), its
/// conditional expectations on S^j for j <= level and its martingale components up to `level`.
template <class T>
struct ProjectionQ {
  std::vector<CylinderFunction<T>> expectations;  // expectations[j] on S^j
  MartingaleRep<T> rep;

  const CylinderFunction<T>& q() const { return expectations.back(); }
};

template <class T>
ProjectionQ<T> project_Q(const KusuokaMeasure<T>& m, const FiniteProcess<T>& f,
                         std::size_t level, std::size_t budget = kDefaultWordBudget);

/// sum_n gamma^{-n} ||f^(n)||; exact when every ||f^(n)||^2 is rational.
template <class T>
Certified gamma_norm(const MartingaleRep<T>& rep, const T& gamma);

/// Residual sum_s A_s^T E F(alpha s) for every alpha in S^{n-1}; zero iff F lies in V^(n).
template <class T>
std::vector<Matrix<T>> orthogonality_residual(const FiniteProcess<T>& f);

/// Orthogonal projection of a degree-k table onto V^(k): for each parent alpha,
/// X_s -> X_s - A_s E^{-1} sum_t A_t^T E X_t. Degree 0 is returned unchanged.
template <class T>
FiniteProcess<T> project_orthogonal_component(const FiniteProcess<T>& f);

struct DilationResult {
  double max_abs_diff = 0.0;
  bool exact_zero = false;  // residual is exactly zero (exact backend only)
};

/// Compares Q(L^k Phi(f)) with the conditional expectations of L^k f on all cylinders of
/// length <= level. For k >= depth(f) the second side is transfer_apply with m = k - depth;
/// otherwise nu(beta)^{-1} sum_{|gamma| = k} integral of f over gamma beta.
template <class T>
DilationResult dilation_check(const KusuokaMeasure<T>& m, const CylinderFunction<T>& f,
                              std::size_t k, std::size_t level,
                              std::size_t budget = kDefaultWordBudget);

struct DecayRow {
  std::size_t j = 0;
  double max_ratio = 0.0;  // max over trials of ||(QG)^(j)|| / ||G||
  double bound = 0.0;      // theta2^(j - k)
  bool ok = false;
};

/// Random G in V^(k) (entries uniform in [-1, 1] on the float backend, integers in [-9, 9]
/// over 10 on the exact backend, then projected), checked against theta2^(j-k) with
/// theta2^2 = 1 - c1. The exact backend compares squared norms exactly; the float backend
/// allows 1e-12.
template <class T>
std::vector<DecayRow> q_decay_check(const KusuokaMeasure<T>& m, std::size_t k,
                                    std::size_t j_max, std::size_t trials, std::uint64_t seed,
                                    const T& c1, std::size_t budget = kDefaultWordBudget);

}  // namespace kusuoka
