#pragma once

#include <stdexcept>
#include <string>

namespace hyperlab {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative method hit its effort cap before reaching the requested
/// tolerance. Carries the last estimate so callers can report it.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last_value, double last_error)
      : std::runtime_error(what), last_value_(last_value), last_error_(last_error) {}

  double last_value() const noexcept { return last_value_; }
  double last_error() const noexcept { return last_error_; }

 private:
  double last_value_;
  double last_error_;
};

/// A denominator in an extrapolation table vanished (|d| < 1e-300).
class BreakdownError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

/// The integrand returned NaN or Inf at an interior abscissa.
class IntegrandError : public std::runtime_error {
 public:
  IntegrandError(const std::string& what, double abscissa)
      : std::runtime_error(what), abscissa_(abscissa) {}

  double abscissa() const noexcept { return abscissa_; }

 private:
  double abscissa_;
};

class UnknownIdentityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace hyperlab
