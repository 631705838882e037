#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "silt/fbm.hpp"
#include "silt/grid.hpp"
#include "silt/mollifier.hpp"
#include "silt/region.hpp"

namespace silt {

enum class EstimateKind { alpha, alpha_hat_prime, alpha_tilde_prime };

std::string to_string(EstimateKind kind);
EstimateKind parse_estimate_kind(const std::string& name);

/// One estimator evaluation with the metadata needed to reproduce it.
struct SiltEstimate {
  EstimateKind kind = EstimateKind::alpha;
  double hurst = 0.5;
  double horizon = 1.0;
  std::size_t n_steps = 0;
  std::uint64_t seed = 0;
  double y = 0.0;
  double epsilon = 0.0;  // 0 only for extrapolated records
  std::string region_id;
  double value = 0.0;
  bool converged = true;
  // alpha_tilde_prime with H >= 2/3, where the limit is not known to exist.
  bool outside_existence_range = false;
};

/// Sum of f_eps(B_s - B_r - y) dr ds over the region's cells.
SiltEstimate alpha_eps(const FbmPath& path, double y, const Mollifier& m, const Region& region);
SiltEstimate alpha_eps(const FbmPath& path, double y, const Mollifier& m);

/// -(sum of f'_eps(B_s - B_r - y) dr ds).
SiltEstimate alpha_prime_eps(const FbmPath& path, double y, const Mollifier& m, const Region& region);
SiltEstimate alpha_prime_eps(const FbmPath& path, double y, const Mollifier& m);

/// -(sum of f'_eps(B_s - B_r - y) (s - r)^{2H-1} dr ds) over D.
SiltEstimate alpha_tilde_prime_eps(const FbmPath& path, double y, const Mollifier& m);

/// alpha_eps at every node of y_grid (one pass over the cells).
std::vector<double> alpha_eps_on_grid(const FbmPath& path, const Region& region, const UniformGrid& y_grid,
                                      const Mollifier& m);
std::vector<double> alpha_prime_eps_on_grid(const FbmPath& path, const Region& region, const UniformGrid& y_grid,
                                            const Mollifier& m);

/// alpha_{t_k, eps}(y) over D for every grid time t_k, k = 0..n.
std::vector<double> alpha_eps_time_profile(const FbmPath& path, double y, const Mollifier& m);
std::vector<double> alpha_prime_eps_time_profile(const FbmPath& path, double y, const Mollifier& m);

/// Richardson extrapolation in eps on a geometric ladder eps_0 > eps_1 > ...,
/// using the last two rungs. converged is set when successive differences
/// shrink in magnitude along the whole ladder.
SiltEstimate epsilon_extrapolate(std::span<const SiltEstimate> ladder);

/// alpha_prime_eps(...) - oracle_mean. The caller chooses the multiplier of
/// the mean (e.g. t * E or E).
double renormalized_alpha_prime(const FbmPath& path, double y, const Mollifier& m, double oracle_mean);

/// eps ladder {0.04, 0.02, 0.01, 0.005} * t^{2H}.
std::vector<double> default_epsilon_ladder(double horizon, HurstParameter hurst);

}  // namespace silt
