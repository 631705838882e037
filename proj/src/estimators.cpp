#include "silt/estimators.hpp"

#include <cmath>
#include <stdexcept>

#include "silt/error.hpp"
#include "silt/kernels.hpp"

namespace silt {

std::string to_string(EstimateKind kind) {
  switch (kind) {
    case EstimateKind::alpha: return "alpha";
    case EstimateKind::alpha_hat_prime: return "alpha_hat_prime";
    case EstimateKind::alpha_tilde_prime: return "alpha_tilde_prime";
  }
  return "unknown";
}

EstimateKind parse_estimate_kind(const std::string& name) {
  if (name == "alpha") return EstimateKind::alpha;
  if (name == "alpha_hat_prime") return EstimateKind::alpha_hat_prime;
  if (name == "alpha_tilde_prime") return EstimateKind::alpha_tilde_prime;
  throw std::invalid_argument("unknown estimator kind: " + name);
}

namespace {

SiltEstimate evaluate(const FbmPath& path, EstimateKind kind, double y, const Mollifier& m, const Region& region) {
  const CellPlan plan = plan_cells(region, path.n_steps(), path.horizon());
  Integrand integrand = Integrand::density;
  if (kind == EstimateKind::alpha_hat_prime) integrand = Integrand::derivative;
  if (kind == EstimateKind::alpha_tilde_prime) integrand = Integrand::tanaka_derivative;
  SiltEstimate e;
  e.kind = kind;
  e.hurst = path.hurst().value();
  e.horizon = path.horizon();
  e.n_steps = path.n_steps();
  e.seed = path.seed();
  e.y = y;
  e.epsilon = m.epsilon();
  e.region_id = region.id();
  e.value = kernels::region_sum(path.view(), plan, {integrand, y, m.epsilon(), path.hurst().value()});
  return e;
}

}  // namespace

SiltEstimate alpha_eps(const FbmPath& path, double y, const Mollifier& m, const Region& region) {
  return evaluate(path, EstimateKind::alpha, y, m, region);
}

SiltEstimate alpha_eps(const FbmPath& path, double y, const Mollifier& m) {
  return alpha_eps(path, y, m, Region::full_triangle(path.horizon()));
}

SiltEstimate alpha_prime_eps(const FbmPath& path, double y, const Mollifier& m, const Region& region) {
  return evaluate(path, EstimateKind::alpha_hat_prime, y, m, region);
}

SiltEstimate alpha_prime_eps(const FbmPath& path, double y, const Mollifier& m) {
  return alpha_prime_eps(path, y, m, Region::full_triangle(path.horizon()));
}

SiltEstimate alpha_tilde_prime_eps(const FbmPath& path, double y, const Mollifier& m) {
  SiltEstimate e = evaluate(path, EstimateKind::alpha_tilde_prime, y, m, Region::full_triangle(path.horizon()));
  e.outside_existence_range = path.hurst().value() >= 2.0 / 3.0;
  return e;
}

std::vector<double> alpha_eps_on_grid(const FbmPath& path, const Region& region, const UniformGrid& y_grid,
                                      const Mollifier& m) {
  const CellPlan plan = plan_cells(region, path.n_steps(), path.horizon());
  return kernels::region_sum_on_grid(path.view(), plan, Integrand::density, y_grid, m.epsilon());
}

std::vector<double> alpha_prime_eps_on_grid(const FbmPath& path, const Region& region, const UniformGrid& y_grid,
                                            const Mollifier& m) {
  const CellPlan plan = plan_cells(region, path.n_steps(), path.horizon());
  return kernels::region_sum_on_grid(path.view(), plan, Integrand::derivative, y_grid, m.epsilon());
}

std::vector<double> alpha_eps_time_profile(const FbmPath& path, double y, const Mollifier& m) {
  return kernels::time_profile(path.view(), Integrand::density, y, m.epsilon());
}

std::vector<double> alpha_prime_eps_time_profile(const FbmPath& path, double y, const Mollifier& m) {
  return kernels::time_profile(path.view(), Integrand::derivative, y, m.epsilon());
}

SiltEstimate epsilon_extrapolate(std::span<const SiltEstimate> ladder) {
  if (ladder.size() < 3) throw DomainError("eps extrapolation needs at least 3 estimates");
  const SiltEstimate& first = ladder.front();
  const double q = ladder[0].epsilon / ladder[1].epsilon;
  if (!(q > 1.0)) throw DomainError("eps ladder must be strictly decreasing");
  for (std::size_t k = 1; k < ladder.size(); ++k) {
    const SiltEstimate& e = ladder[k];
    if (e.kind != first.kind || e.y != first.y || e.region_id != first.region_id || e.seed != first.seed ||
        e.n_steps != first.n_steps || e.hurst != first.hurst || e.horizon != first.horizon)
      throw DomainError("eps ladder mixes paths, kinds, levels or regions");
    const double ratio = ladder[k - 1].epsilon / e.epsilon;
    if (std::abs(ratio - q) > 1e-9 * q) throw DomainError("eps ladder is not geometric");
  }
  std::vector<double> diffs;
  for (std::size_t k = 1; k < ladder.size(); ++k) diffs.push_back(ladder[k].value - ladder[k - 1].value);
  bool converged = true;
  for (std::size_t k = 1; k < diffs.size(); ++k)
    if (std::abs(diffs[k]) > std::abs(diffs[k - 1])) converged = false;

  const double v_prev = ladder[ladder.size() - 2].value;
  const double v_last = ladder.back().value;
  SiltEstimate out = ladder.back();
  out.epsilon = 0.0;
  out.value = (q * v_last - v_prev) / (q - 1.0);
  out.converged = converged;
  return out;
}

double renormalized_alpha_prime(const FbmPath& path, double y, const Mollifier& m, double oracle_mean) {
  return alpha_prime_eps(path, y, m).value - oracle_mean;
}

std::vector<double> default_epsilon_ladder(double horizon, HurstParameter hurst) {
  const double scale = std::pow(horizon, 2.0 * hurst.value());
  return {0.04 * scale, 0.02 * scale, 0.01 * scale, 0.005 * scale};
}

}  // namespace silt
