#include "silt/kernels.hpp"

#include <cmath>
#include <numbers>

#include "silt/mollifier.hpp"

namespace silt {

namespace detail {

std::vector<double> cell_midpoints(PathView path) {
  const std::size_t n = path.n_steps();
  std::vector<double> mid(n);
  for (std::size_t i = 0; i < n; ++i) mid[i] = 0.5 * (path.values[i] + path.values[i + 1]);
  return mid;
}

}  // namespace detail

namespace kernels {

namespace {

constexpr double kGridExponentCutoff = 60.0;

double gaussian_norm(double eps) { return 1.0 / std::sqrt(2.0 * std::numbers::pi * eps); }

}  // namespace

double region_sum(PathView path, const CellPlan& plan, const KernelParams& params) {
  const double inv2eps = 0.5 / params.epsilon;
  const double y = params.y;
  const double norm = gaussian_norm(params.epsilon);
  auto gauss = [inv2eps](double d) {
    const double q = d * d * inv2eps;
    return q > -kUnderflowExponent ? 0.0 : std::exp(-q);
  };
  switch (params.integrand) {
    case Integrand::density:
      return norm * accumulate(path, plan, [&](double x, double) { return gauss(x - y); });
    case Integrand::derivative:
      return norm / params.epsilon * accumulate(path, plan, [&](double x, double) {
               const double d = x - y;
               return d * gauss(d);
             });
    case Integrand::tanaka_derivative: {
      const double power = 2.0 * params.hurst - 1.0;
      return norm / params.epsilon * accumulate(path, plan, [&](double x, double lag) {
               const double d = x - y;
               return d * gauss(d) * std::pow(lag, power);
             });
    }
  }
  return 0.0;
}

namespace {

// Adds w * f(x - y_k) (density) or w * (x - y_k)/eps * f(x - y_k) (derivative)
// into out[k] for all grid nodes within the cutoff window of x.
struct GridScatter {
  const UniformGrid& grid;
  double eps;
  bool derivative;
  double window;     // sqrt(2 * cutoff * eps)
  double ratio_mul;  // exp(-h^2 / eps)
  bool direct;       // grid too coarse for the recurrence

  void operator()(double x, double w, std::vector<double>& out) const {
    const double h = grid.step;
    const auto last = static_cast<double>(grid.count - 1);
    const double k_lo_real = std::ceil((x - window - grid.lo) / h);
    const double k_hi_real = std::floor((x + window - grid.lo) / h);
    if (k_hi_real < 0.0 || k_lo_real > last) return;
    const auto k_lo = static_cast<std::size_t>(std::max(0.0, k_lo_real));
    const auto k_hi = static_cast<std::size_t>(std::min(last, k_hi_real));
    if (k_lo > k_hi) return;
    const double inv2eps = 0.5 / eps;
    const double dscale = derivative ? 1.0 / eps : 0.0;
    auto emit = [&](std::size_t k, double g) {
      const double d = x - grid.at(k);
      out[k] += w * (derivative ? d * dscale * g : g);
    };
    if (direct) {
      for (std::size_t k = k_lo; k <= k_hi; ++k) {
        const double d = x - grid.at(k);
        emit(k, std::exp(-d * d * inv2eps));
      }
      return;
    }
    const auto k0 = static_cast<std::size_t>(
        std::clamp(std::round((x - grid.lo) / h), static_cast<double>(k_lo), static_cast<double>(k_hi)));
    const double d0 = x - grid.at(k0);
    const double g0 = std::exp(-d0 * d0 * inv2eps);
    emit(k0, g0);
    // Moving right d decreases by h: g_{k+1} = g_k * exp((2 d_k h - h^2) / (2 eps)).
    double g = g0;
    double r = std::exp((2.0 * d0 * h - h * h) * inv2eps);
    for (std::size_t k = k0 + 1; k <= k_hi; ++k) {
      g *= r;
      r *= ratio_mul;
      emit(k, g);
    }
    g = g0;
    r = std::exp((-2.0 * d0 * h - h * h) * inv2eps);
    for (std::size_t k = k0; k > k_lo; --k) {
      g *= r;
      r *= ratio_mul;
      emit(k - 1, g);
    }
  }
};

}  // namespace

std::vector<double> region_sum_on_grid(PathView path, const CellPlan& plan, Integrand integrand,
                                       const UniformGrid& y_grid, double epsilon) {
  std::vector<double> total(y_grid.count, 0.0);
  if (y_grid.count == 0) return total;
  const bool derivative = integrand != Integrand::density;
  const double h = y_grid.step;
  GridScatter scatter{y_grid,
                      epsilon,
                      derivative,
                      std::sqrt(2.0 * kGridExponentCutoff * epsilon),
                      std::exp(-h * h / epsilon),
                      h * h / epsilon > 4.0};

  const std::vector<double> mid = detail::cell_midpoints(path);
  const double dt = plan.step;
  const std::size_t n_rows = plan.rows.size();
  const std::size_t n_blocks = (n_rows + detail::kRowBlock - 1) / detail::kRowBlock;
  std::vector<std::vector<double>> block_sums(n_blocks);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t b = 0; b < n_blocks; ++b) {
    std::vector<double> acc(y_grid.count, 0.0);
    for (std::size_t q = b * detail::kRowBlock; q < std::min(n_rows, (b + 1) * detail::kRowBlock); ++q) {
      const CellRow& row = plan.rows[q];
      const double base = mid[row.i];
      for (std::size_t j = row.j_full_begin; j < row.j_end; ++j) scatter(mid[j] - base, dt * dt, acc);
      if (row.half) scatter(detail::half_cell_increment(path, row.i, row.i + plan.offset), 0.5 * dt * dt, acc);
    }
    block_sums[b] = std::move(acc);
  }
  for (const auto& acc : block_sums)
    for (std::size_t k = 0; k < total.size(); ++k) total[k] += acc[k];
  const double norm = gaussian_norm(epsilon);
  for (double& v : total) v *= norm;
  return total;
}

std::vector<double> time_profile(PathView path, Integrand integrand, double y, double epsilon, double hurst) {
  const std::size_t n = path.n_steps();
  const std::vector<double> mid = detail::cell_midpoints(path);
  const double dt = path.step();
  const double inv2eps = 0.5 / epsilon;
  const double power = 2.0 * hurst - 1.0;
  auto term = [&](double x, double lag) {
    const double d = x - y;
    const double q = d * d * inv2eps;
    const double g = q > -kUnderflowExponent ? 0.0 : std::exp(-q);
    switch (integrand) {
      case Integrand::density: return g;
      case Integrand::derivative: return d * g;
      case Integrand::tanaka_derivative: return d * g * std::pow(lag, power);
    }
    return 0.0;
  };
  std::vector<double> column(n, 0.0);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::size_t j = 0; j < n; ++j) {
    double full = 0.0;
    for (std::size_t i = 0; i < j; ++i) full += term(mid[j] - mid[i], static_cast<double>(j - i) * dt);
    column[j] = full * dt * dt + 0.5 * dt * dt * term(detail::half_cell_increment(path, j, j), dt / 3.0);
  }
  const double scale =
      gaussian_norm(epsilon) * (integrand == Integrand::density ? 1.0 : 1.0 / epsilon);
  std::vector<double> profile(n + 1, 0.0);
  for (std::size_t k = 1; k <= n; ++k) profile[k] = profile[k - 1] + scale * column[k - 1];
  return profile;
}

IncrementRange increment_range(PathView path, const CellPlan& plan) {
  const std::vector<double> mid = detail::cell_midpoints(path);
  IncrementRange range;
  for (const CellRow& row : plan.rows) {
    const double base = mid[row.i];
    for (std::size_t j = row.j_full_begin; j < row.j_end; ++j) {
      range.min = std::min(range.min, mid[j] - base);
      range.max = std::max(range.max, mid[j] - base);
    }
    if (row.half) {
      const double x = detail::half_cell_increment(path, row.i, row.i + plan.offset);
      range.min = std::min(range.min, x);
      range.max = std::max(range.max, x);
    }
  }
  return range;
}

}  // namespace kernels

}  // namespace silt
