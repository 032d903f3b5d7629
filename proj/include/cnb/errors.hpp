#pragma once

#include <stdexcept>
#include <string>

namespace cnb {

// Size disagreement between operands, or between a coefficient list and a matrix.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Constructors reject NaN/Inf at the boundary; downstream code assumes finite entries.
class NonFiniteError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A bound was requested outside its domain, e.g. the symmetric-X bound on a
// non-symmetric matrix.
class ApplicabilityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An iterative solver exhausted its sweep/iteration budget. Carries the last
// residual so callers can report how far it got.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& message, double residual)
      : std::runtime_error(message), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_ = 0.0;
};

}  // namespace cnb
