#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "kusuoka/matsys.hpp"

namespace kusuoka {

/// nu(alpha) = Tr(A(alpha)^T E A(alpha)) for a validated system.
template <class T>
class KusuokaMeasure {
 public:
  /// Validates the system; throws ValidationError if any invariant fails.
  explicit KusuokaMeasure(MatrixSystem<T> sys, double tol = kDefaultTolerance);
  explicit KusuokaMeasure(SystemPtr<T> sys, double tol = kDefaultTolerance);

  const MatrixSystem<T>& system() const { return *sys_; }
  const SystemPtr<T>& system_ptr() const { return sys_; }

  T nu(const Word& w) const;
  /// nu(ws) / nu(w).
  T conditional(const Word& w, Symbol s) const;
  /// nu(x_0 ... x_{n-1}) / nu(x_1 ... x_{n-1}).
  T g_approx(const Word& prefix) const;

  /// nu(alpha cap T^{-(n+k)} beta) - nu(alpha) nu(beta) with k = |alpha|, via
  /// Tr(A(alpha)^T (M*)^n (A(beta)^T E A(beta)) A(alpha)).
  T correlation_gap(const Word& alpha, const Word& beta, long n) const;

  /// H_N = A(prefix)^T E A(prefix) / nu(prefix).
  Matrix<T> h_state(const Word& prefix) const;

  /// sum_alpha Tr(H_N(prefix) M^m (A(alpha) A(alpha)^T)) f(alpha), i.e. the conditional
  /// expectation of L^{m+k} f on the cylinder of `prefix`.
  T transfer_apply(const CylinderFunction<T>& f, std::size_t m, const Word& prefix,
                   std::size_t budget = kDefaultWordBudget) const;

  /// Integral of f over the cylinder of w.
  T integrate(const CylinderFunction<T>& f, const Word& w,
              std::size_t budget = kDefaultWordBudget) const;

 private:
  SystemPtr<T> sys_;
};

template <class T>
struct MixingRow {
  long n = 0;
  T max_gap;            // max |correlation_gap| over the cylinder pairs
  T gap_bound;          // d * rate^n
  bool gap_ok = false;  // max_gap <= gap_bound, exact on the exact backend
  double max_pointwise = 0.0;  // max over alpha of ||M^n(A A^T - nu I)||_op / nu(alpha)
  bool pointwise_ok = false;   // ||M^n(A A^T - nu I)||_op <= d rate^n nu(alpha) for every alpha
};

/// For each n <= n_max: pairs alpha in S^k, beta in S^j with 1 <= j <= k. The pointwise
/// operator-norm bound is certified through principal minors of c I -/+ X on the exact
/// backend and compared with a 1e-12 slack on the float backend.
template <class T>
std::vector<MixingRow<T>> mixing_bound_check(const KusuokaMeasure<T>& m, std::size_t k,
                                             long n_max, const T& rate,
                                             std::size_t budget = kDefaultWordBudget);

/// Counter-based SplitMix64 stream.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Sequential sampler drawing x_i with probability conditional(x_0 ... x_{i-1}, x_i).
/// Cumulative distributions are cached per prefix for short prefixes.
template <class T>
class Sampler {
 public:
  Sampler(const KusuokaMeasure<T>& m, std::uint64_t seed) : m_(m), rng_(seed) {}
  Word draw(std::size_t length);

 private:
  const std::vector<double>& cdf(const Word& prefix);

  const KusuokaMeasure<T>& m_;
  SplitMix64 rng_;
  std::map<Word, std::vector<double>> cache_;
  std::vector<double> scratch_;
};

template <class T>
Word sample(const KusuokaMeasure<T>& m, std::size_t length, std::uint64_t seed) {
  return Sampler<T>(m, seed).draw(length);
}

}  // namespace kusuoka
