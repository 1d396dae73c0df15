#pragma once

#include <stdexcept>
#include <string>

namespace kusuoka {

/// Shapes of matrices or processes do not agree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A symbol outside the system's alphabet.
class UnknownSymbol : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration or table would exceed the configured |S|^k budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical precondition failed (singular pivot, non-rational radicand, ...).
class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The energy form is not positive definite; carries the offending eigenvalue.
class NotPositiveDefinite : public MathError {
 public:
  NotPositiveDefinite(const std::string& what, double eigenvalue)
      : MathError(what), eigenvalue_(eigenvalue) {}
  double eigenvalue() const { return eigenvalue_; }

 private:
  double eigenvalue_;
};

/// A system failed the fixed-point validation where a valid one is required.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file or configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace kusuoka
