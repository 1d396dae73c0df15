#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kusuoka {

/// Exact element of a multiquadratic field: a finite sum q_1*sqrt(r_1) + ... + q_m*sqrt(r_m)
/// with rational q_i and distinct squarefree positive radicands r_i.
///
/// Terms are kept sorted by radicand with nonzero coefficients, so the representation is
/// canonical: two values are equal iff their term lists are equal. This relies on the square
/// roots of distinct squarefree integers being linearly independent over Q.
class Surd {
 public:
  struct Term {
    mpz_class radicand;
    mpq_class coef;
  };

  Surd() = default;
  Surd(long value);  // NOLINT(google-explicit-constructor)
  Surd(const mpq_class& value);  // NOLINT(google-explicit-constructor)

  /// sqrt(q) for rational q >= 0. Throws MathError for negative q or when the radicand
  /// cannot be certified squarefree.
  static Surd sqrt_of(const mpq_class& q);

  /// Parses "p/q", "p/q*sqrt(k)", decimals like "0.25", and sums/differences of such terms.
  static Surd parse(std::string_view text);

  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  /// The value as a rational; throws MathError if irrational.
  mpq_class rational() const;

  double to_double() const;
  /// Exact sign (-1, 0, +1), resolved with increasing floating precision when irrational.
  int sign() const;

  Surd inverse() const;

  /// Canonical text form, e.g. "3/10 - 1/10*sqrt(3)".
  std::string str() const;

  Surd operator-() const;
  Surd& operator+=(const Surd& other);
  Surd& operator-=(const Surd& other);
  Surd& operator*=(const Surd& other);
  Surd& operator/=(const Surd& other);

  friend Surd operator+(Surd a, const Surd& b) { return a += b; }
  friend Surd operator-(Surd a, const Surd& b) { return a -= b; }
  friend Surd operator*(const Surd& a, const Surd& b);
  friend Surd operator/(const Surd& a, const Surd& b) { return a * b.inverse(); }

  friend bool operator==(const Surd& a, const Surd& b);
  friend std::strong_ordering operator<=>(const Surd& a, const Surd& b);

 private:
  explicit Surd(std::vector<Term> terms) : terms_(std::move(terms)) {}
  static Surd from_terms(std::vector<Term> terms);

  std::vector<Term> terms_;
};

Surd abs(const Surd& x);

/// Splits n > 0 as square^2 * squarefree. Throws MathError when a large cofactor cannot be
/// certified squarefree by trial division.
std::pair<mpz_class, mpz_class> squarefree_split(const mpz_class& n);

}  // namespace kusuoka
