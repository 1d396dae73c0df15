#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "kusuoka/matrix.hpp"
#include "kusuoka/symbolic.hpp"

namespace kusuoka {

/// Restriction maps {A_s} and an energy form E on R^d.
template <class T>
class MatrixSystem {
 public:
  MatrixSystem(Alphabet alphabet, std::vector<Matrix<T>> maps, Matrix<T> energy);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t size() const { return maps_.size(); }
  std::size_t dim() const { return dim_; }
  const Matrix<T>& map(Symbol s) const { return maps_.at(s); }
  const std::vector<Matrix<T>>& maps() const { return maps_; }
  const Matrix<T>& energy() const { return energy_; }
  /// True iff every A_s is symmetric (exactly on the exact backend, to 1e-12 otherwise).
  bool symmetric() const { return symmetric_; }

  Matrix<T> word_matrix(const Word& w) const { return kusuoka::word_matrix(maps_, w, dim_); }
  void check_word(const Word& w) const;

 private:
  Alphabet alphabet_;
  std::size_t dim_ = 0;
  std::vector<Matrix<T>> maps_;
  Matrix<T> energy_;
  bool symmetric_ = false;
};

template <class T>
using SystemPtr = std::shared_ptr<const MatrixSystem<T>>;

struct ValidationReport {
  double energy_residual = 0.0;    // Frobenius norm of sum A_s^T E A_s - E
  double identity_residual = 0.0;  // Frobenius norm of sum A_s A_s^T - I
  double trace_residual = 0.0;     // |Tr E - 1|
  double min_energy_eigenvalue = 0.0;
  bool energy_ok = false;
  bool identity_ok = false;
  bool trace_ok = false;
  bool energy_symmetric = false;
  bool injective = false;
  std::vector<Symbol> singular_maps;

  bool passed() const { return energy_ok && identity_ok && trace_ok && energy_symmetric && injective; }
};

inline constexpr double kDefaultTolerance = 1e-12;

/// Checks both fixed-point equations, the trace normalization and injectivity. The exact
/// backend requires zero residuals; the float backend compares with `tol`. Throws
/// NotPositiveDefinite when E is not positive definite.
template <class T>
ValidationReport validate(const MatrixSystem<T>& sys, double tol = kDefaultTolerance);

/// <a, b>_E = Tr(b^T E a).
template <class T>
T inner_e(const MatrixSystem<T>& sys, const Matrix<T>& a, const Matrix<T>& b);

/// M(b) = sum_s A_s b A_s^T.
template <class T>
Matrix<T> apply_M(const MatrixSystem<T>& sys, const Matrix<T>& b);

/// M*(b) = sum_s A_s^T b A_s.
template <class T>
Matrix<T> apply_M_star(const MatrixSystem<T>& sys, const Matrix<T>& b);

enum class Subspace { full, symmetric, antisymmetric, traceless_symmetric };

Subspace parse_subspace(const std::string& name);

/// Matrix of M on an invariant subspace, in an E-orthonormal basis of that subspace.
template <class T>
struct OperatorRep {
  std::vector<Matrix<T>> basis;
  Matrix<T> matrix;  // matrix(i, j) = <M(basis[j]), basis[i]>_E
};

/// Basis: Gram-Schmidt under <.,.>_E applied to E_11, E_12, ..., E_dd (full), to E_ii and
/// E_ij + E_ji for i < j (symmetric), to E_ij - E_ji (antisymmetric), and to the identity
/// followed by the symmetric basis with the identity dropped afterwards (traceless-symmetric).
/// On the exact backend every normalization must be a square root of a rational.
template <class T>
OperatorRep<T> matrix_rep_M(const MatrixSystem<T>& sys, Subspace part);

/// Schatten p-norm from singular values; p = infinity gives the spectral norm.
template <class T>
double schatten_norm(const Matrix<T>& b, double p);

/// A_s = R^{-s} D R^s with D = diag(3, 1)/sqrt(15), R the rotation by -2pi/3, E = I/2.
template <class T>
MatrixSystem<T> builtin_sg();

/// One-dimensional system with A_s = sqrt(p_s) and E = 1.
template <class T>
MatrixSystem<T> builtin_bernoulli(const std::vector<mpq_class>& probabilities);

MatrixSystem<double> to_float(const MatrixSystem<Surd>& sys);

}  // namespace kusuoka
