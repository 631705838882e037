#pragma once

#include <stdexcept>
#include <string>

namespace silt {

/// Input outside the mathematical domain of an operation (negative time, zero gap, H >= 2/3 ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Path synthesis failed on every route that was attempted.
class SynthesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature could not reach the requested tolerance. Carries the
/// best value found and the tolerance actually achieved.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double best_value, double achieved_error)
      : std::runtime_error(what), best_value_(best_value), achieved_error_(achieved_error) {}

  double best_value() const noexcept { return best_value_; }
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double best_value_;
  double achieved_error_;
};

}  // namespace silt
