#include "silt/fbm.hpp"

#include <fftw3.h>

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>

#include "silt/error.hpp"
#include "silt/rng.hpp"

namespace silt {

HurstParameter::HurstParameter(double value) : value_(value) {
  if (!(value > 0.0 && value < 1.0))
    throw DomainError("Hurst parameter must lie in (0,1), got " + std::to_string(value));
}

FbmPath::FbmPath(HurstParameter hurst, double horizon, std::vector<double> values, std::uint64_t seed)
    : hurst_(hurst), horizon_(horizon), values_(std::move(values)), seed_(seed) {
  if (!(horizon > 0.0)) throw DomainError("path horizon must be positive");
  if (values_.size() < 2) throw DomainError("path needs at least one step");
  if (values_.front() != 0.0) throw DomainError("path must start at 0");
}

ConfigurationTimes::ConfigurationTimes(std::vector<double> times) : times_(std::move(times)) {
  if (times_.size() < 2 || times_.size() % 2 != 0)
    throw std::invalid_argument("configuration needs an even number (>= 2) of times");
  if (times_.front() < 0.0) throw DomainError("configuration times must be nonnegative");
  if (!std::is_sorted(times_.begin(), times_.end()))
    throw std::invalid_argument("configuration times must be nondecreasing");
}

double covariance(double s, double t, HurstParameter hurst) {
  if (s < 0.0 || t < 0.0) throw DomainError("covariance: times must be nonnegative");
  const double h2 = 2.0 * hurst.value();
  return 0.5 * (std::pow(s, h2) + std::pow(t, h2) - std::pow(std::abs(t - s), h2));
}

double increment_covariance(double a, double b, double c, double d, HurstParameter hurst) {
  const double h2 = 2.0 * hurst.value();
  if (h2 == 1.0) {
    // Brownian case: covariance is the signed overlap length, exactly 0 for disjoint increments.
    const double lo = std::max(std::min(a, b), std::min(c, d));
    const double hi = std::min(std::max(a, b), std::max(c, d));
    const double sign = ((b >= a) == (d >= c)) ? 1.0 : -1.0;
    return hi > lo ? sign * (hi - lo) : 0.0;
  }
  auto p = [h2](double x) { return std::pow(std::abs(x), h2); };
  return 0.5 * (p(d - a) + p(c - b) - p(d - b) - p(c - a));
}

namespace {

// FFTW planning is not thread-safe; plans are cached per size and executed with
// the new-array interface on fftw_malloc'd buffers (same alignment as planning).
struct FftwBuffer {
  explicit FftwBuffer(std::size_t n)
      : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))), size(n) {
    if (data == nullptr) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;

  std::complex<double>& operator[](std::size_t i) { return reinterpret_cast<std::complex<double>*>(data)[i]; }

  fftw_complex* data;
  std::size_t size;
};

fftw_plan forward_plan(std::size_t m) {
  static std::mutex mutex;
  static std::map<std::size_t, fftw_plan> plans;
  std::lock_guard lock(mutex);
  if (auto it = plans.find(m); it != plans.end()) return it->second;
  FftwBuffer in(m), out(m);
  fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(m), in.data, out.data, FFTW_FORWARD, FFTW_ESTIMATE);
  plans.emplace(m, plan);
  return plan;
}

double fgn_autocovariance(std::size_t k, double h2) {
  const double kd = static_cast<double>(k);
  return 0.5 * (std::pow(kd + 1.0, h2) - 2.0 * std::pow(kd, h2) + std::pow(std::abs(kd - 1.0), h2));
}

std::size_t embedding_size(std::size_t n_steps) { return 2 * std::bit_ceil(n_steps); }

constexpr double kPsdTolerance = 1e-10;

// Unit-spacing fGn via circulant embedding; returns false when the embedding
// has an eigenvalue below -kPsdTolerance * max.
bool circulant_fgn(HurstParameter hurst, std::size_t n_steps, std::uint64_t seed, std::vector<double>& out) {
  const std::vector<double> lambda = circulant_eigenvalues(hurst, n_steps);
  const std::size_t m = lambda.size();
  const double lmax = *std::max_element(lambda.begin(), lambda.end());
  for (double l : lambda)
    if (l < -kPsdTolerance * lmax) return false;

  SplitMix64 rng(seed);
  std::normal_distribution<double> normal;
  FftwBuffer work(m), result(m);
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double scale = std::sqrt(std::max(lambda[k], 0.0) * inv_m);
    const double re = normal(rng);
    const double im = normal(rng);
    work[k] = {scale * re, scale * im};
  }
  fftw_execute_dft(forward_plan(m), work.data, result.data);
  out.resize(n_steps);
  for (std::size_t k = 0; k < n_steps; ++k) out[k] = result[k].real();
  return true;
}

bool cholesky_fgn(HurstParameter hurst, std::size_t n_steps, std::uint64_t seed, std::vector<double>& out) {
  const double h2 = 2.0 * hurst.value();
  const auto n = static_cast<Eigen::Index>(n_steps);
  Eigen::MatrixXd cov(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) cov(i, j) = fgn_autocovariance(static_cast<std::size_t>(std::abs(i - j)), h2);
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) return false;

  SplitMix64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd z(n);
  for (Eigen::Index i = 0; i < n; ++i) z(i) = normal(rng);
  const Eigen::VectorXd x = llt.matrixL() * z;
  out.assign(x.data(), x.data() + n);
  return true;
}

}  // namespace

std::vector<double> circulant_eigenvalues(HurstParameter hurst, std::size_t n_steps) {
  if (n_steps == 0) throw DomainError("n_steps must be positive");
  const std::size_t m = embedding_size(n_steps);
  const double h2 = 2.0 * hurst.value();
  FftwBuffer row(m), spectrum(m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t lag = k <= m / 2 ? k : m - k;
    row[k] = {fgn_autocovariance(lag, h2), 0.0};
  }
  fftw_execute_dft(forward_plan(m), row.data, spectrum.data);
  std::vector<double> lambda(m);
  for (std::size_t k = 0; k < m; ++k) lambda[k] = spectrum[k].real();
  return lambda;
}

FbmPath generate_path(HurstParameter hurst, double horizon, std::size_t n_steps, std::uint64_t seed,
                      SynthesisMethod method) {
  if (n_steps < 1) throw DomainError("generate_path: n_steps must be >= 1");
  if (!(horizon > 0.0)) throw DomainError("generate_path: horizon must be positive");

  std::vector<double> noise;
  bool ok = false;
  if (method != SynthesisMethod::cholesky) ok = circulant_fgn(hurst, n_steps, seed, noise);
  if (!ok && method == SynthesisMethod::circulant)
    throw SynthesisError("circulant embedding is not nonnegative definite (no fallback requested)");
  if (!ok) {
    ok = cholesky_fgn(hurst, n_steps, seed, noise);
    if (!ok) {
      throw SynthesisError(method == SynthesisMethod::cholesky
                               ? "Cholesky factorization of the fGn covariance failed"
                               : "circulant embedding failed and the Cholesky fallback failed too");
    }
  }

  // Self-similarity: fGn at spacing dt is dt^H times unit-spacing fGn.
  const double scale = std::pow(horizon / static_cast<double>(n_steps), hurst.value());
  std::vector<double> values(n_steps + 1, 0.0);
  for (std::size_t k = 0; k < n_steps; ++k) values[k + 1] = values[k] + scale * noise[k];
  return FbmPath(hurst, horizon, std::move(values), seed);
}

double increment_combination_variance(const ConfigurationTimes& times, std::span<const double> weights,
                                      HurstParameter hurst) {
  const auto& l = times.times();
  if (weights.size() != times.n_gaps())
    throw std::invalid_argument("weights must have one entry per gap (2n-1)");
  double var = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (weights[j] == 0.0) continue;
    for (std::size_t k = 0; k < weights.size(); ++k) {
      if (weights[k] == 0.0) continue;
      var += weights[j] * weights[k] * increment_covariance(l[j], l[j + 1], l[k], l[k + 1], hurst);
    }
  }
  return std::max(var, 0.0);
}

double characteristic_functional(const ConfigurationTimes& times, std::span<const double> weights,
                                 HurstParameter hurst) {
  return std::exp(-0.5 * increment_combination_variance(times, weights, hurst));
}

double lnd_ratio(const ConfigurationTimes& times, std::span<const double> weights, HurstParameter hurst) {
  if (weights.size() != times.n_gaps())
    throw std::invalid_argument("weights must have one entry per gap (2n-1)");
  const double h2 = 2.0 * hurst.value();
  double denom = 0.0;
  bool any = false;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (times.gap(j) <= 0.0) throw DomainError("lnd_ratio: zero gap");
    if (weights[j] != 0.0) any = true;
    denom += weights[j] * weights[j] * std::pow(times.gap(j), h2);
  }
  if (!any) throw DomainError("lnd_ratio: all weights are zero");
  return increment_combination_variance(times, weights, hurst) / denom;
}

}  // namespace silt
