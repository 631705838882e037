#include <algorithm>
#include <cmath>

#include "silt/error.hpp"
#include "silt/kernels.hpp"
#include "silt/mollifier.hpp"

namespace silt::reference {

namespace {

// Linear interpolation of the sampled path at time tau.
double path_at(PathView path, double tau) {
  const double dt = path.step();
  const std::size_t n = path.n_steps();
  const double q = tau / dt;
  auto i = static_cast<std::size_t>(std::floor(q));
  if (i >= n) i = n - 1;
  const double frac = q - static_cast<double>(i);
  return path.values[i] + frac * (path.values[i + 1] - path.values[i]);
}

// Area of box [r0,r1] x [s0,s1] intersected with {s - r > kappa}.
double box_area_above(double r0, double r1, double s0, double s1, double kappa) {
  if (r1 <= r0 || s1 <= s0) return 0.0;
  auto len = [&](double r) { return std::clamp(s1 - std::max(s0, r + kappa), 0.0, s1 - s0); };
  std::vector<double> knots{r0, r1};
  for (double k : {s0 - kappa, s1 - kappa})
    if (k > r0 && k < r1) knots.push_back(k);
  std::sort(knots.begin(), knots.end());
  double a = 0.0;
  for (std::size_t q = 0; q + 1 < knots.size(); ++q) a += 0.5 * (len(knots[q]) + len(knots[q + 1])) * (knots[q + 1] - knots[q]);
  return a;
}

double integrand_value(const KernelParams& p, double x, double lag) {
  const Mollifier m(p.epsilon);
  switch (p.integrand) {
    case Integrand::density: return f_eps(x - p.y, m);
    case Integrand::derivative: return -f_eps_prime(x - p.y, m);
    case Integrand::tanaka_derivative: return -f_eps_prime(x - p.y, m) * std::pow(lag, 2.0 * p.hurst - 1.0);
  }
  return 0.0;
}

}  // namespace

double region_sum(PathView path, const Region& region, const KernelParams& params) {
  const std::size_t n = path.n_steps();
  if (n < 2) throw DomainError("estimators need a path with at least 2 steps");
  if (region.extent() > path.horizon * (1.0 + 1e-12)) throw DomainError("region extends beyond the path horizon");
  const double dt = path.step();
  const double full_area = dt * dt;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double r0 = dt * static_cast<double>(i), r1 = dt * static_cast<double>(i + 1);
      const double s0 = dt * static_cast<double>(j), s1 = dt * static_cast<double>(j + 1);
      double area = 0.0;
      for (const Rectangle& rect : region.rectangles())
        area += box_area_above(std::max(r0, rect.r_lo), std::min(r1, rect.r_hi), std::max(s0, rect.s_lo),
                               std::min(s1, rect.s_hi), region.kappa());
      if (area <= 1e-9 * full_area) continue;
      double r = 0.0, s = 0.0;
      if (std::abs(area - full_area) <= 1e-9 * full_area) {
        r = r0 + 0.5 * dt;
        s = s0 + 0.5 * dt;
      } else if (std::abs(area - 0.5 * full_area) <= 1e-9 * full_area) {
        r = r0 + dt / 3.0;
        s = s0 + 2.0 * dt / 3.0;
      } else {
        throw DomainError("region is not aligned with the path grid");
      }
      sum += area * integrand_value(params, path_at(path, s) - path_at(path, r), s - r);
    }
  }
  return sum;
}

std::vector<double> region_sum_on_grid(PathView path, const Region& region, Integrand integrand,
                                       const UniformGrid& y_grid, double epsilon) {
  std::vector<double> out(y_grid.count);
  for (std::size_t k = 0; k < y_grid.count; ++k)
    out[k] = region_sum(path, region, {integrand, y_grid.at(k), epsilon, 0.5});
  return out;
}

std::vector<double> time_profile(PathView path, Integrand integrand, double y, double epsilon, double hurst) {
  const std::size_t n = path.n_steps();
  std::vector<double> out(n + 1, 0.0);
  for (std::size_t k = 2; k <= n; ++k) {
    const double t = path.step() * static_cast<double>(k);
    out[k] = region_sum(path, Region::full_triangle(t), {integrand, y, epsilon, hurst});
  }
  // t_1: only the diagonal half cell of the first step.
  if (n >= 1) {
    const double dt = path.step();
    const double x = path_at(path, 2.0 * dt / 3.0) - path_at(path, dt / 3.0);
    out[1] = 0.5 * dt * dt * integrand_value({integrand, y, epsilon, hurst}, x, dt / 3.0);
  }
  return out;
}

}  // namespace silt::reference
