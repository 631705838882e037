#pragma once

#include <cmath>
#include <numbers>

namespace silt {

/// Gaussian approximate identity f_eps (density of N(0, eps)).
class Mollifier {
 public:
  explicit Mollifier(double epsilon);
  double epsilon() const noexcept { return epsilon_; }

 private:
  double epsilon_;
};

/// Exponent below which exp() is treated as exactly 0.
inline constexpr double kUnderflowExponent = -745.0;

inline double f_eps(double x, const Mollifier& m) noexcept {
  const double eps = m.epsilon();
  const double arg = -0.5 * x * x / eps;
  if (arg < kUnderflowExponent) return 0.0;
  return std::exp(arg) / std::sqrt(2.0 * std::numbers::pi * eps);
}

inline double f_eps_prime(double x, const Mollifier& m) noexcept {
  const double eps = m.epsilon();
  const double arg = -0.5 * x * x / eps;
  if (arg < kUnderflowExponent) return 0.0;
  return -x * std::exp(arg) / std::sqrt(2.0 * std::numbers::pi * eps * eps * eps);
}

struct FourierRepresentation {
  double f = 0.0;        // (1/2pi) int e^{ipx} e^{-eps p^2/2} dp
  double f_prime = 0.0;  // (i/2pi) int p e^{ipx} e^{-eps p^2/2} dp
};

/// Trapezoid evaluation of both Fourier representations on [-cutoff, cutoff]
/// with n_nodes equispaced nodes. Recommended cutoff: 12 / sqrt(eps).
FourierRepresentation fourier_check(double x, const Mollifier& m, double cutoff, int n_nodes);

inline double default_fourier_cutoff(const Mollifier& m) { return 12.0 / std::sqrt(m.epsilon()); }

}  // namespace silt
