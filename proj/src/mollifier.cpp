#include "silt/mollifier.hpp"

#include <string>

#include "silt/error.hpp"

namespace silt {

Mollifier::Mollifier(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("mollifier epsilon must be positive, got " + std::to_string(epsilon));
}

FourierRepresentation fourier_check(double x, const Mollifier& m, double cutoff, int n_nodes) {
  if (!(cutoff > 0.0)) throw DomainError("fourier_check: cutoff must be positive");
  if (n_nodes < 16) throw DomainError("fourier_check: need at least 16 nodes");

  // Real parts only: the imaginary parts integrate odd functions to zero.
  const double eps = m.epsilon();
  const double h = 2.0 * cutoff / static_cast<double>(n_nodes - 1);
  double f = 0.0;
  double fp = 0.0;
  for (int k = 0; k < n_nodes; ++k) {
    const double p = -cutoff + h * static_cast<double>(k);
    const double w = (k == 0 || k == n_nodes - 1) ? 0.5 : 1.0;
    const double damp = std::exp(-0.5 * eps * p * p);
    f += w * std::cos(p * x) * damp;
    fp -= w * p * std::sin(p * x) * damp;
  }
  const double scale = h / (2.0 * std::numbers::pi);
  return {f * scale, fp * scale};
}

}  // namespace silt
