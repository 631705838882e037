#include "silt/expectation.hpp"

#include <cmath>
#include <numbers>

#include "silt/error.hpp"
#include "silt/quadrature.hpp"

namespace silt {

namespace {

const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
constexpr double kOneThird = 1.0 / 3.0;
// exp(-x) with x above this is below the smallest normal double.
constexpr double kUnderflow = 745.0;

void check_t(double t) {
  if (!(t > 0.0)) throw DomainError("t must be positive");
}

bool is_critical(double h) { return std::abs(h - kOneThird) < 1e-12; }

}  // namespace

ExpectationResult mean_alpha_prime_eps(double t, double y, double epsilon, HurstParameter hurst) {
  check_t(t);
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  ExpectationResult r{0.0, 0.0, t, y, epsilon, hurst.value()};
  if (y == 0.0) return r;
  const double h2 = 2.0 * hurst.value();
  const double y2 = y * y;
  auto f = [=](double u) {
    const double v = epsilon + std::pow(u, h2);
    return (t - u) * std::exp(-0.5 * y2 / v) / (v * std::sqrt(v));
  };
  const quad::Result q = quad::integrate(f, 0.0, t, {1e-13, 1e-10, 2000}, {std::pow(epsilon, 1.0 / h2)});
  const double scale = std::abs(y) * kInvSqrt2Pi;
  r.value = -(y > 0 ? 1.0 : -1.0) * scale * q.value;
  r.abs_error_estimate = scale * q.abs_error;
  return r;
}

ExpectationResult mean_alpha_prime(double t, double y, HurstParameter hurst) {
  check_t(t);
  ExpectationResult r{0.0, 0.0, t, y, 0.0, hurst.value()};
  if (y == 0.0) return r;
  const double H = hurst.value();
  const double y2 = y * y;
  // u = e^w; integrand (t - u) u^{1-3H} exp(-y^2 u^{-2H} / 2).
  auto f = [=](double w) {
    const double u = std::exp(w);
    const double ex = (1.0 - 3.0 * H) * w - 0.5 * y2 * std::exp(-2.0 * H * w);
    return (t - u) * std::exp(ex);
  };
  const double w_lo = std::log(y2 / (2.0 * kUnderflow)) / (2.0 * H);
  const double w_hi = std::log(t);
  if (w_lo >= w_hi) return r;
  const double w_peak = std::log(std::abs(y)) / H;
  const quad::Result q = quad::integrate(f, w_lo, w_hi, {0.0, 1e-10, 2000}, {w_peak});
  const double scale = std::abs(y) * kInvSqrt2Pi;
  r.value = -(y > 0 ? 1.0 : -1.0) * scale * q.value;
  r.abs_error_estimate = scale * q.abs_error;
  return r;
}

ExpectationResult mean_alpha_prime_rescaled(double t, double y, HurstParameter hurst) {
  check_t(t);
  ExpectationResult r{0.0, 0.0, t, y, 0.0, hurst.value()};
  if (y == 0.0) return r;
  const double H = hurst.value();
  const double c = std::pow(std::abs(y), 1.0 / H);
  const double w_min = -std::log(2.0 * kUnderflow) / (2.0 * H);
  // G(a) = int_0^a v^{-3H} e^{-v^{-2H}/2} dv, in log v.
  auto inner = [=](double a) {
    if (a <= 0.0) return 0.0;
    const double w_max = std::log(a);
    if (w_max <= w_min) return 0.0;
    auto g = [=](double w) { return std::exp((1.0 - 3.0 * H) * w - 0.5 * std::exp(-2.0 * H * w)); };
    return quad::integrate(g, w_min, w_max, {0.0, 1e-12, 2000}, {0.0}).value;
  };
  auto outer = [&](double s) { return inner(s / c); };
  const quad::Result q = quad::integrate(outer, 0.0, t, {0.0, 1e-10, 2000}, {c});
  const double scale = std::pow(std::abs(y), 1.0 / H - 2.0) * kInvSqrt2Pi;
  r.value = -(y > 0 ? 1.0 : -1.0) * scale * q.value;
  r.abs_error_estimate = scale * q.abs_error;
  return r;
}

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::supercritical: return "supercritical";
    case Regime::critical: return "critical";
    case Regime::subcritical: return "subcritical";
  }
  return "unknown";
}

double supercritical_integral(HurstParameter hurst, double* abs_error) {
  const double H = hurst.value();
  if (!(H > kOneThird) || is_critical(H)) throw DomainError("the v-integral diverges for H <= 1/3");
  auto g = [=](double w) { return std::exp((1.0 - 3.0 * H) * w - 0.5 * std::exp(-2.0 * H * w)); };
  const quad::Result q = quad::integrate_real_line(g, {0.0, 1e-12, 2000});
  if (abs_error != nullptr) *abs_error = q.abs_error;
  return q.value;
}

RegimeClass regime_classify(HurstParameter hurst) {
  const double H = hurst.value();
  if (H >= 2.0 / 3.0) throw DomainError("small-y regimes are defined for H < 2/3");
  if (is_critical(H)) return {Regime::critical, true};
  if (H < kOneThird) return {Regime::subcritical, true};
  return {Regime::supercritical, H < 0.5};
}

AsymptoticRegime asymptotic_constant(double t, HurstParameter hurst) {
  check_t(t);
  const double H = hurst.value();
  AsymptoticRegime a;
  a.regime = regime_classify(hurst).regime;
  switch (a.regime) {
    case Regime::supercritical: {
      a.scaling = "|y|^(1/H-2)";
      a.constant = -t * kInvSqrt2Pi * supercritical_integral(hurst, &a.abs_error_estimate);
      a.abs_error_estimate *= t * kInvSqrt2Pi;
      a.stated_constant = a.constant;
      break;
    }
    case Regime::critical:
      a.scaling = "y*log|y|";
      a.constant = 3.0 * t * kInvSqrt2Pi;
      a.stated_constant = a.constant;
      break;
    case Regime::subcritical:
      a.scaling = "y";
      a.stated_constant = -std::pow(t, 2.0 - 3.0 * H) / ((1.0 - 3.0 * H) * std::sqrt(2.0 * std::numbers::pi));
      a.constant = a.stated_constant / (2.0 - 3.0 * H);
      break;
  }
  return a;
}

double asymptotic_normalizer(Regime regime, double y, HurstParameter hurst) {
  switch (regime) {
    case Regime::supercritical:
      return (y > 0 ? 1.0 : (y < 0 ? -1.0 : 0.0)) * std::pow(std::abs(y), 1.0 / hurst.value() - 2.0);
    case Regime::critical: return y == 0.0 ? 0.0 : y * std::log(std::abs(y));
    case Regime::subcritical: return y;
  }
  return 0.0;
}

}  // namespace silt
