#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace silt {

/// Hurst index, strictly inside (0,1).
class HurstParameter {
 public:
  explicit HurstParameter(double value);
  double value() const noexcept { return value_; }

 private:
  double value_;
};

/// Non-owning view of a sampled path on the uniform grid t_i = i * horizon / n.
struct PathView {
  std::span<const double> values;  // n + 1 samples
  double horizon = 0.0;

  std::size_t n_steps() const noexcept { return values.empty() ? 0 : values.size() - 1; }
  double step() const noexcept { return horizon / static_cast<double>(n_steps()); }
};

/// A sampled fractional Brownian motion trajectory.
class FbmPath {
 public:
  /// Wraps explicit samples (synthetic paths in tests, CSV imports). values[0] must be 0.
  FbmPath(HurstParameter hurst, double horizon, std::vector<double> values, std::uint64_t seed = 0);

  HurstParameter hurst() const noexcept { return hurst_; }
  double horizon() const noexcept { return horizon_; }
  std::size_t n_steps() const noexcept { return values_.size() - 1; }
  double step() const noexcept { return horizon_ / static_cast<double>(n_steps()); }
  double time(std::size_t i) const noexcept { return step() * static_cast<double>(i); }
  std::uint64_t seed() const noexcept { return seed_; }
  const std::vector<double>& values() const noexcept { return values_; }
  PathView view() const noexcept { return {values_, horizon_}; }

 private:
  HurstParameter hurst_;
  double horizon_;
  std::vector<double> values_;
  std::uint64_t seed_;
};

/// Sorted times l_1 <= ... <= l_{2n} of a pair configuration.
class ConfigurationTimes {
 public:
  explicit ConfigurationTimes(std::vector<double> times);

  const std::vector<double>& times() const noexcept { return times_; }
  std::size_t n_gaps() const noexcept { return times_.size() - 1; }
  /// a_j = l_{j+1} - l_j, 0-based.
  double gap(std::size_t j) const noexcept { return times_[j + 1] - times_[j]; }

 private:
  std::vector<double> times_;
};

enum class SynthesisMethod { automatic, circulant, cholesky };

/// Cov(B_s, B_t) = (s^{2H} + t^{2H} - |t-s|^{2H}) / 2.
double covariance(double s, double t, HurstParameter hurst);

/// Cov(B_b - B_a, B_d - B_c).
double increment_covariance(double a, double b, double c, double d, HurstParameter hurst);

/// Eigenvalues of the circulant embedding of unit-spacing fGn autocovariance
/// on m points (m = 2 * next_pow2(n_steps)), before clamping.
std::vector<double> circulant_eigenvalues(HurstParameter hurst, std::size_t n_steps);

/// Exact-in-distribution fBm sample on the uniform grid. Circulant embedding
/// (Davies-Harte) with full-covariance Cholesky as fallback. Deterministic per seed.
FbmPath generate_path(HurstParameter hurst, double horizon, std::size_t n_steps, std::uint64_t seed,
                      SynthesisMethod method = SynthesisMethod::automatic);

/// Variance of sum_j u_j (B_{l_{j+1}} - B_{l_j}).
double increment_combination_variance(const ConfigurationTimes& times, std::span<const double> weights,
                                      HurstParameter hurst);

/// E[exp(i sum_j u_j (B_{l_{j+1}} - B_{l_j}))] = exp(-Var/2). Always in (0,1].
double characteristic_functional(const ConfigurationTimes& times, std::span<const double> weights,
                                 HurstParameter hurst);

/// Var(sum u_j dB_j) / sum_j u_j^2 a_j^{2H}. Local nondeterminism bounds this below.
double lnd_ratio(const ConfigurationTimes& times, std::span<const double> weights, HurstParameter hurst);

}  // namespace silt
