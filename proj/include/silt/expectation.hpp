#pragma once

#include <string>

#include "silt/fbm.hpp"

namespace silt {

struct ExpectationResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  double t = 0.0;
  double y = 0.0;
  double epsilon = 0.0;
  double hurst = 0.0;
};

/// E[alpha'_{t,eps}(y)] = -y / sqrt(2 pi) int_0^t (t - u) e^{-y^2 / (2 (eps + u^{2H}))} (eps + u^{2H})^{-3/2} du.
ExpectationResult mean_alpha_prime_eps(double t, double y, double epsilon, HurstParameter hurst);

/// eps = 0 limit of the above. Integrated in log u from the point where the
/// Gaussian factor underflows; 0 at y = 0, odd in y.
ExpectationResult mean_alpha_prime(double t, double y, HurstParameter hurst);

/// Same quantity through the rescaled double integral
/// -sgn(y) |y|^{1/H-2} / sqrt(2 pi) int_0^t int_0^{s / |y|^{1/H}} v^{-3H} e^{-v^{-2H}/2} dv ds,
/// evaluated by nested quadrature. Independent route for cross-checks.
ExpectationResult mean_alpha_prime_rescaled(double t, double y, HurstParameter hurst);

enum class Regime { supercritical, critical, subcritical };

std::string to_string(Regime regime);

struct AsymptoticRegime {
  Regime regime = Regime::supercritical;
  std::string scaling;  // normalizer of E[alpha'_t(y)] as y -> 0+
  // Limit of E[alpha'_t(y)] / normalizer(y) as y -> 0+.
  double constant = 0.0;
  // The closed form as usually quoted; differs from `constant` by the factor
  // 1 / (2 - 3H) in the subcritical regime.
  double stated_constant = 0.0;
  double abs_error_estimate = 0.0;
};

/// 0 < H < 2/3, otherwise DomainError.
AsymptoticRegime asymptotic_constant(double t, HurstParameter hurst);

/// |y|^{1/H-2} sgn(y), y log|y| or y.
double asymptotic_normalizer(Regime regime, double y, HurstParameter hurst);

struct RegimeClass {
  Regime regime = Regime::supercritical;
  bool continuous_at_zero = false;
};

RegimeClass regime_classify(HurstParameter hurst);

/// int_0^inf v^{-3H} e^{-v^{-2H}/2} dv, finite for H > 1/3.
double supercritical_integral(HurstParameter hurst, double* abs_error = nullptr);

}  // namespace silt
