#pragma once

#include <gmpxx.h>

#include <complex>
#include <vector>

namespace kusuoka {

/// Univariate polynomial over Q, coefficients from the constant term up, no trailing zeros.
class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<mpq_class> coefs);

  const std::vector<mpq_class>& coefs() const { return coefs_; }
  int degree() const { return static_cast<int>(coefs_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return coefs_.empty(); }
  const mpq_class& leading() const { return coefs_.back(); }

  mpq_class eval(const mpq_class& x) const;
  std::complex<double> eval(std::complex<double> x) const;
  RationalPoly derivative() const;
  RationalPoly monic() const;

  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
  friend RationalPoly operator-(const RationalPoly& a, const RationalPoly& b);
  friend bool operator==(const RationalPoly& a, const RationalPoly& b) {
    return a.coefs_ == b.coefs_;
  }

  /// Quotient and remainder of a / b.
  static std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& a, const RationalPoly& b);
  static RationalPoly gcd(RationalPoly a, RationalPoly b);

  /// Product of the distinct irreducible factors (monic).
  RationalPoly squarefree_part() const;
  /// Integer coefficients with content 1 and positive leading coefficient.
  std::vector<mpz_class> primitive_integer() const;

  /// All complex roots (with multiplicity) from the companion matrix.
  std::vector<std::complex<double>> numeric_roots() const;
  /// Distinct rational roots, each verified by exact evaluation. Ascending.
  std::vector<mpq_class> rational_roots() const;

 private:
  void trim();
  std::vector<mpq_class> coefs_;
};

}  // namespace kusuoka
