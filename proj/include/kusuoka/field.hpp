#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include "kusuoka/errors.hpp"
#include "kusuoka/surd.hpp"

namespace kusuoka {

/// Scalar traits shared by the two backends. `Field<double>` is the floating backend,
/// `Field<Surd>` the exact one.
template <class T>
struct Field;

template <>
struct Field<double> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";

  static double from_rational(const mpq_class& q) { return q.get_d(); }
  static double sqrt(double x) {
    if (x < 0) throw MathError("square root of a negative number");
    return std::sqrt(x);
  }
  static double to_double(double x) { return x; }
  static int sign(double x) { return (x > 0) - (x < 0); }
  static bool is_zero(double x) { return x == 0.0; }
  static double abs(double x) { return std::fabs(x); }
  static std::string str(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
  }
  static double parse(std::string_view text) { return Surd::parse(text).to_double(); }
};

template <>
struct Field<Surd> {
  static constexpr bool exact = true;
  static constexpr const char* name = "exact";

  static Surd from_rational(const mpq_class& q) { return Surd(q); }
  /// Square roots are only available for rational arguments.
  static Surd sqrt(const Surd& x) {
    if (!x.is_rational()) throw MathError("square root of an irrational value: " + x.str());
    return Surd::sqrt_of(x.rational());
  }
  static double to_double(const Surd& x) { return x.to_double(); }
  static int sign(const Surd& x) { return x.sign(); }
  static bool is_zero(const Surd& x) { return x.is_zero(); }
  static Surd abs(const Surd& x) { return kusuoka::abs(x); }
  static std::string str(const Surd& x) { return x.str(); }
  static Surd parse(std::string_view text) { return Surd::parse(text); }
};

/// A value with an optional exact certificate.
struct Certified {
  double value = 0.0;
  std::optional<Surd> exact;

  bool is_exact() const { return exact.has_value(); }
  std::string str() const { return exact ? exact->str() : Field<double>::str(value); }

  static Certified of(const Surd& x) { return {x.to_double(), x}; }
  static Certified of(double x) { return {x, std::nullopt}; }
};

}  // namespace kusuoka
