#pragma once

// Thin wrapper over GSL's adaptive Gauss-Kronrod routines. Failures throw
// QuadratureError with the best value and its error estimate.

#include <functional>
#include <vector>

namespace silt::quad {

struct Result {
  double value = 0.0;
  double abs_error = 0.0;
};

struct Tolerance {
  double abs = 1e-10;
  double rel = 1e-10;
  std::size_t limit = 2000;
};

/// int_a^b f, with optional interior breakpoints (QAGP when given, QAG otherwise).
Result integrate(const std::function<double(double)>& f, double a, double b, Tolerance tol = {},
                 std::vector<double> breakpoints = {});

/// int_{-inf}^{inf} f.
Result integrate_real_line(const std::function<double(double)>& f, Tolerance tol = {});

}  // namespace silt::quad
