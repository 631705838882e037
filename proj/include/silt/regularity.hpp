#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "silt/estimators.hpp"
#include "silt/fbm.hpp"
#include "silt/grid.hpp"
#include "silt/mollifier.hpp"
#include "silt/region.hpp"

namespace silt {

enum class TestFunctionKind { constant, linear, gaussian, polynomial_cutoff, cosine };

/// Test function g with closed-form derivative.
///   constant:          a
///   linear:            a x
///   gaussian:          exp(-(x - c)^2 / (2 w^2))
///   polynomial_cutoff: (1 - ((x - c) / w)^2)^3 on |x - c| < w, else 0
///   cosine:            cos(w x + c)
class TestFunction {
 public:
  /// Throws std::logic_error if g' disagrees with central differences.
  TestFunction(TestFunctionKind kind, double a, double c, double w);

  static TestFunction constant(double a = 1.0) { return {TestFunctionKind::constant, a, 0.0, 1.0}; }
  static TestFunction linear(double a = 1.0) { return {TestFunctionKind::linear, a, 0.0, 1.0}; }
  static TestFunction gaussian(double center, double width) {
    return {TestFunctionKind::gaussian, 1.0, center, width};
  }
  static TestFunction polynomial_cutoff(double center, double width) {
    return {TestFunctionKind::polynomial_cutoff, 1.0, center, width};
  }
  static TestFunction cosine(double frequency, double phase) {
    return {TestFunctionKind::cosine, 1.0, phase, frequency};
  }

  double operator()(double x) const;
  double derivative(double x) const;
  TestFunctionKind kind() const noexcept { return kind_; }
  std::string name() const;

 private:
  TestFunctionKind kind_;
  double a_, c_, w_;
};

struct OccupationCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double leakage = 0.0;  // estimated mollifier mass outside the y-grid

  double residual() const;  // |lhs - rhs| / (|lhs| + 1e-12)
};

/// lhs = sum of g(B_s - B_r) over the region's cells; rhs = int g(y) alpha_eps(y) dy
/// on y_grid. Throws DomainError when more than 1e-6 of the mollifier mass of
/// some increment falls outside y_grid.
OccupationCheck occupation_check_alpha(const FbmPath& path, const TestFunction& g, const UniformGrid& y_grid,
                                       const Mollifier& m, const Region& region);
OccupationCheck occupation_check_alpha(const FbmPath& path, const TestFunction& g, const UniformGrid& y_grid,
                                       const Mollifier& m);

/// lhs = sum of g'(B_s - B_r); rhs = -int g(y) alpha'_eps(y) dy.
OccupationCheck occupation_check_derivative(const FbmPath& path, const TestFunction& g, const UniformGrid& y_grid,
                                            const Mollifier& m, const Region& region);
OccupationCheck occupation_check_derivative(const FbmPath& path, const TestFunction& g, const UniformGrid& y_grid,
                                            const Mollifier& m);

/// y-grid covering the increment range of the region padded by 20 sqrt(eps).
UniformGrid covering_y_grid(const FbmPath& path, const Region& region, const Mollifier& m, double step);

/// max over interior nodes of |(alpha(y+h) - alpha(y-h)) / 2h - alpha'(y)|.
double derivative_consistency(const FbmPath& path, const UniformGrid& y_grid, const Mollifier& m,
                              const Region& region);
double derivative_consistency(const FbmPath& path, const UniformGrid& y_grid, const Mollifier& m);

enum class HolderAxis { space, time, joint };
std::string to_string(HolderAxis axis);

/// Replicates of a field sampled on a uniform (y, t) grid, values[iy * n_t + it].
struct FieldSamples {
  std::size_t n_y = 0;
  std::size_t n_t = 0;
  double y_step = 1.0;
  double t_step = 1.0;
  std::vector<std::vector<double>> replicates;
};

struct HolderReport {
  HolderAxis axis = HolderAxis::time;
  double estimated_exponent = 0.0;  // slope / 2, clamped to [0, 1]
  double raw_slope = 0.0;
  std::vector<double> regression_lags;
  std::vector<double> structure_function;  // mean |increment|^2 per lag
  double r_squared = 0.0;
  std::optional<double> theoretical_bound;
  bool reliable = true;  // r_squared >= 0.9
};

/// Slope of log E|field(x + lag) - field(x)|^2 against log lag, halved.
/// Lags are dyadic multiples of the grid spacing from 2 to N/8 (from 1 when
/// that leaves fewer than 4). For the joint axis both indices advance together.
HolderReport holder_exponent_estimate(const FieldSamples& field, HolderAxis axis,
                                      std::optional<double> theoretical_bound = std::nullopt);

/// Hölder-order thresholds: alpha (time/joint 1-H, space min(1/H-1,1)),
/// alpha_hat_prime (time/joint 1-2H, space min(1/H-2,1), H < 1/2 only), and the
/// region-restricted alpha_hat_prime (space 1/H-3/2, time 1-3H/2).
std::optional<double> theoretical_bound(HurstParameter hurst, EstimateKind kind, HolderAxis axis,
                                        bool region_restricted = false);

struct ProbeRow {
  double y = 0.0;
  double mean = 0.0;
  double variance = 0.0;
  double renormalized_mean = 0.0;
  double renormalized_variance = 0.0;
  double oracle_mean = 0.0;
};

/// Ensemble statistics of alpha'_eps and its centred version near y = 0.
/// Exploratory; requires 1/2 < H < 2/3 and a y-grid symmetric about 0.
std::vector<ProbeRow> continuity_probe_at_zero(HurstParameter hurst, double horizon, std::size_t n_steps,
                                               std::uint64_t seed_base, std::size_t replicates,
                                               const UniformGrid& y_grid, const Mollifier& m);

}  // namespace silt
