#include "silt/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "silt/error.hpp"
#include "silt/expectation.hpp"
#include "silt/kernels.hpp"

namespace silt {

TestFunction::TestFunction(TestFunctionKind kind, double a, double c, double w) : kind_(kind), a_(a), c_(c), w_(w) {
  if (!(w_ > 0.0)) throw std::invalid_argument("test function width must be positive");
  // Probe points and step on the function's own length scale.
  const double scale = kind_ == TestFunctionKind::cosine ? 1.0 / w_ : w_;
  for (double z : {-1.3, -0.4, 0.1, 0.7, 1.9}) {
    const double x = c_ + z * scale;
    const double h = 1e-4 * scale;
    const double fd = ((*this)(x + h) - (*this)(x - h)) / (2.0 * h);
    const double d = derivative(x);
    if (std::abs(fd - d) > 1e-6 * (std::abs(d) + std::abs(a_) / scale))
      throw std::logic_error("test function derivative mismatch");
  }
}

double TestFunction::operator()(double x) const {
  switch (kind_) {
    case TestFunctionKind::constant: return a_;
    case TestFunctionKind::linear: return a_ * x;
    case TestFunctionKind::gaussian: {
      const double z = (x - c_) / w_;
      return a_ * std::exp(-0.5 * z * z);
    }
    case TestFunctionKind::polynomial_cutoff: {
      const double z = (x - c_) / w_;
      if (std::abs(z) >= 1.0) return 0.0;
      const double b = 1.0 - z * z;
      return a_ * b * b * b;
    }
    case TestFunctionKind::cosine: return a_ * std::cos(w_ * x + c_);
  }
  return 0.0;
}

double TestFunction::derivative(double x) const {
  switch (kind_) {
    case TestFunctionKind::constant: return 0.0;
    case TestFunctionKind::linear: return a_;
    case TestFunctionKind::gaussian: {
      const double z = (x - c_) / w_;
      return -a_ * z / w_ * std::exp(-0.5 * z * z);
    }
    case TestFunctionKind::polynomial_cutoff: {
      const double z = (x - c_) / w_;
      if (std::abs(z) >= 1.0) return 0.0;
      const double b = 1.0 - z * z;
      return -6.0 * a_ * z * b * b / w_;
    }
    case TestFunctionKind::cosine: return -a_ * w_ * std::sin(w_ * x + c_);
  }
  return 0.0;
}

std::string TestFunction::name() const {
  switch (kind_) {
    case TestFunctionKind::constant: return "constant";
    case TestFunctionKind::linear: return "linear";
    case TestFunctionKind::gaussian: return "gaussian";
    case TestFunctionKind::polynomial_cutoff: return "polynomial_cutoff";
    case TestFunctionKind::cosine: return "cosine";
  }
  return "unknown";
}

double OccupationCheck::residual() const { return std::abs(lhs - rhs) / (std::abs(lhs) + 1e-12); }

namespace {

constexpr double kMaxLeakage = 1e-6;

double leakage(const IncrementRange& range, const UniformGrid& grid, double eps) {
  const double s = std::sqrt(2.0 * eps);
  const double upper = 0.5 * std::erfc((grid.hi() - range.max) / s);
  const double lower = 0.5 * std::erfc((range.min - grid.lo) / s);
  return std::max(upper, lower);
}

struct Prepared {
  CellPlan plan;
  double leak = 0.0;
};

Prepared prepare(const FbmPath& path, const Region& region, const UniformGrid& y_grid, const Mollifier& m) {
  Prepared p{plan_cells(region, path.n_steps(), path.horizon())};
  if (y_grid.count < 2) throw DomainError("y-grid needs at least 2 nodes");
  p.leak = leakage(kernels::increment_range(path.view(), p.plan), y_grid, m.epsilon());
  if (p.leak > kMaxLeakage) throw DomainError("y-grid too narrow: mollifier mass outside the grid exceeds 1e-6");
  return p;
}

double weighted_trapezoid(const TestFunction& g, const UniformGrid& grid, const std::vector<double>& values) {
  std::vector<double> prod(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) prod[k] = g(grid.at(k)) * values[k];
  return trapezoid(prod, grid.step);
}

}  // namespace

OccupationCheck occupation_check_alpha(const FbmPath& path, const TestFunction& g, const UniformGrid& y_grid,
                                       const Mollifier& m, const Region& region) {
  const Prepared p = prepare(path, region, y_grid, m);
  OccupationCheck out;
  out.leakage = p.leak;
  out.lhs = kernels::accumulate(path.view(), p.plan, [&](double x, double) { return g(x); });
  const auto alpha = kernels::region_sum_on_grid(path.view(), p.plan, Integrand::density, y_grid, m.epsilon());
  out.rhs = weighted_trapezoid(g, y_grid, alpha);
  return out;
}

OccupationCheck occupation_check_alpha(const FbmPath& path, const TestFunction& g, const UniformGrid& y_grid,
                                       const Mollifier& m) {
  return occupation_check_alpha(path, g, y_grid, m, Region::full_triangle(path.horizon()));
}

OccupationCheck occupation_check_derivative(const FbmPath& path, const TestFunction& g, const UniformGrid& y_grid,
                                            const Mollifier& m, const Region& region) {
  const Prepared p = prepare(path, region, y_grid, m);
  OccupationCheck out;
  out.leakage = p.leak;
  out.lhs = kernels::accumulate(path.view(), p.plan, [&](double x, double) { return g.derivative(x); });
  const auto prime = kernels::region_sum_on_grid(path.view(), p.plan, Integrand::derivative, y_grid, m.epsilon());
  out.rhs = -weighted_trapezoid(g, y_grid, prime);
  return out;
}

OccupationCheck occupation_check_derivative(const FbmPath& path, const TestFunction& g, const UniformGrid& y_grid,
                                            const Mollifier& m) {
  return occupation_check_derivative(path, g, y_grid, m, Region::full_triangle(path.horizon()));
}

UniformGrid covering_y_grid(const FbmPath& path, const Region& region, const Mollifier& m, double step) {
  if (!(step > 0.0)) throw DomainError("y-grid step must be positive");
  const CellPlan plan = plan_cells(region, path.n_steps(), path.horizon());
  const IncrementRange range = kernels::increment_range(path.view(), plan);
  const double pad = 20.0 * std::sqrt(m.epsilon());
  const double lo = std::floor((range.min - pad) / step) * step;
  const double hi = std::ceil((range.max + pad) / step) * step;
  return {lo, step, static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1};
}

double derivative_consistency(const FbmPath& path, const UniformGrid& y_grid, const Mollifier& m,
                              const Region& region) {
  if (y_grid.count < 3) throw DomainError("derivative check needs at least 3 grid nodes");
  const auto alpha = alpha_eps_on_grid(path, region, y_grid, m);
  const auto prime = alpha_prime_eps_on_grid(path, region, y_grid, m);
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < y_grid.count; ++k) {
    const double fd = (alpha[k + 1] - alpha[k - 1]) / (2.0 * y_grid.step);
    worst = std::max(worst, std::abs(fd - prime[k]));
  }
  return worst;
}

double derivative_consistency(const FbmPath& path, const UniformGrid& y_grid, const Mollifier& m) {
  return derivative_consistency(path, y_grid, m, Region::full_triangle(path.horizon()));
}

std::string to_string(HolderAxis axis) {
  switch (axis) {
    case HolderAxis::space: return "space";
    case HolderAxis::time: return "time";
    case HolderAxis::joint: return "joint";
  }
  return "unknown";
}

HolderReport holder_exponent_estimate(const FieldSamples& field, HolderAxis axis,
                                      std::optional<double> bound) {
  if (field.replicates.empty()) throw DomainError("no replicates");
  for (const auto& r : field.replicates)
    if (r.size() != field.n_y * field.n_t) throw DomainError("replicate size does not match the grid");

  std::size_t n_axis = 0;
  double spacing = 0.0;
  switch (axis) {
    case HolderAxis::space: n_axis = field.n_y; spacing = field.y_step; break;
    case HolderAxis::time: n_axis = field.n_t; spacing = field.t_step; break;
    case HolderAxis::joint:
      n_axis = std::min(field.n_y, field.n_t);
      spacing = std::hypot(field.y_step, field.t_step);
      break;
  }
  const std::size_t max_lag = n_axis / 8;
  std::vector<std::size_t> lags;
  for (std::size_t lag = 2; lag <= max_lag; lag *= 2) lags.push_back(lag);
  if (lags.size() < 4) {
    lags.clear();
    for (std::size_t lag = 1; lag <= max_lag; lag *= 2) lags.push_back(lag);
  }
  if (lags.size() < 4) throw DomainError("grid too short for 4 dyadic lags");

  const std::size_t dy = axis == HolderAxis::time ? 0 : 1;
  const std::size_t dt = axis == HolderAxis::space ? 0 : 1;
  HolderReport rep;
  rep.axis = axis;
  rep.theoretical_bound = bound;
  std::vector<double> xs, ys;
  for (std::size_t lag : lags) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& v : field.replicates) {
      for (std::size_t iy = 0; iy + lag * dy < field.n_y; ++iy) {
        for (std::size_t it = 0; it + lag * dt < field.n_t; ++it) {
          const double d = v[(iy + lag * dy) * field.n_t + it + lag * dt] - v[iy * field.n_t + it];
          sum += d * d;
          ++count;
        }
      }
    }
    const double s = sum / static_cast<double>(count);
    rep.regression_lags.push_back(static_cast<double>(lag) * spacing);
    rep.structure_function.push_back(s);
    if (s > 0.0) {
      xs.push_back(std::log(rep.regression_lags.back()));
      ys.push_back(std::log(s));
    }
  }
  if (xs.size() < 2) {
    // Constant field: no measurable increments.
    rep.reliable = false;
    return rep;
  }
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
    syy += (ys[k] - my) * (ys[k] - my);
  }
  rep.raw_slope = sxy / sxx;
  rep.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  rep.estimated_exponent = std::clamp(rep.raw_slope / 2.0, 0.0, 1.0);
  rep.reliable = rep.r_squared >= 0.9;
  return rep;
}

std::optional<double> theoretical_bound(HurstParameter hurst, EstimateKind kind, HolderAxis axis,
                                        bool region_restricted) {
  const double H = hurst.value();
  if (region_restricted) {
    if (kind != EstimateKind::alpha_hat_prime) return std::nullopt;
    if (axis == HolderAxis::space) return 1.0 / H - 1.5;
    if (axis == HolderAxis::time) return 1.0 - 1.5 * H;
    return std::nullopt;
  }
  switch (kind) {
    case EstimateKind::alpha:
      if (axis == HolderAxis::space) return std::min(1.0 / H - 1.0, 1.0);
      return 1.0 - H;
    case EstimateKind::alpha_hat_prime:
      if (H >= 0.5) return std::nullopt;
      if (axis == HolderAxis::space) return std::min(1.0 / H - 2.0, 1.0);
      return 1.0 - 2.0 * H;
    case EstimateKind::alpha_tilde_prime: return std::nullopt;
  }
  return std::nullopt;
}

std::vector<ProbeRow> continuity_probe_at_zero(HurstParameter hurst, double horizon, std::size_t n_steps,
                                               std::uint64_t seed_base, std::size_t replicates,
                                               const UniformGrid& y_grid, const Mollifier& m) {
  const double H = hurst.value();
  if (!(H > 0.5 && H < 2.0 / 3.0)) throw DomainError("continuity probe requires 1/2 < H < 2/3");
  if (std::abs(y_grid.lo + y_grid.hi()) > 1e-12 * std::max(1.0, std::abs(y_grid.lo)))
    throw DomainError("continuity probe needs a y-grid symmetric about 0");
  if (replicates < 2) throw DomainError("continuity probe needs at least 2 replicates");

  std::vector<ProbeRow> rows(y_grid.count);
  for (std::size_t k = 0; k < y_grid.count; ++k) {
    rows[k].y = y_grid.at(k);
    rows[k].oracle_mean = mean_alpha_prime_eps(horizon, rows[k].y, m.epsilon(), hurst).value;
  }
  std::vector<double> sum(y_grid.count, 0.0), sum2(y_grid.count, 0.0), rsum(y_grid.count, 0.0),
      rsum2(y_grid.count, 0.0);
  const Region d = Region::full_triangle(horizon);
  for (std::size_t r = 0; r < replicates; ++r) {
    const FbmPath path = generate_path(hurst, horizon, n_steps, seed_base + r);
    const auto values = alpha_prime_eps_on_grid(path, d, y_grid, m);
    for (std::size_t k = 0; k < y_grid.count; ++k) {
      const double c = values[k] - rows[k].oracle_mean;
      sum[k] += values[k];
      sum2[k] += values[k] * values[k];
      rsum[k] += c;
      rsum2[k] += c * c;
    }
  }
  const auto n = static_cast<double>(replicates);
  for (std::size_t k = 0; k < y_grid.count; ++k) {
    rows[k].mean = sum[k] / n;
    rows[k].variance = std::max(0.0, (sum2[k] - n * rows[k].mean * rows[k].mean) / (n - 1.0));
    rows[k].renormalized_mean = rsum[k] / n;
    rows[k].renormalized_variance =
        std::max(0.0, (rsum2[k] - n * rows[k].renormalized_mean * rows[k].renormalized_mean) / (n - 1.0));
  }
  return rows;
}

}  // namespace silt
