#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "silt/error.hpp"
#include "silt/estimators.hpp"
#include "silt/expectation.hpp"
#include "silt/grid.hpp"

using namespace silt;

namespace {

double max_abs(const FbmPath& p) {
  double m = 0.0;
  for (double x : p.values()) m = std::max(m, std::abs(x));
  return m;
}

SiltEstimate fake(double eps, double value) {
  SiltEstimate e;
  e.kind = EstimateKind::alpha_hat_prime;
  e.epsilon = eps;
  e.value = value;
  e.n_steps = 64;
  e.region_id = "D";
  return e;
}

}  // namespace

TEST_CASE("estimate kinds round-trip through their names") {
  for (auto k : {EstimateKind::alpha, EstimateKind::alpha_hat_prime, EstimateKind::alpha_tilde_prime})
    CHECK(parse_estimate_kind(to_string(k)) == k);
  CHECK_THROWS(parse_estimate_kind("alpha_bar"));
}

TEST_CASE("far from the path range every estimator vanishes") {
  const FbmPath path = generate_path(HurstParameter(0.4), 1.0, 256, 1);
  const Mollifier m(0.01);
  const double y = 2.0 * max_abs(path) + 20.0 * std::sqrt(m.epsilon()) + 0.1;
  CHECK(alpha_eps(path, y, m).value < 1e-10);
  CHECK(std::abs(alpha_prime_eps(path, y, m).value) < 1e-10);
  CHECK(std::abs(alpha_tilde_prime_eps(path, -y, m).value) < 1e-10);
}

TEST_CASE("estimates carry their metadata") {
  const FbmPath path = generate_path(HurstParameter(0.4), 2.0, 64, 42);
  const SiltEstimate e = alpha_prime_eps(path, 0.3, Mollifier(0.02), Region::dyadic_square(1, 1, 2.0));
  CHECK(e.kind == EstimateKind::alpha_hat_prime);
  CHECK(e.hurst == 0.4);
  CHECK(e.horizon == 2.0);
  CHECK(e.n_steps == 64);
  CHECK(e.seed == 42);
  CHECK(e.y == 0.3);
  CHECK(e.epsilon == 0.02);
  CHECK(e.region_id == Region::dyadic_square(1, 1, 2.0).id());
  CHECK(e.converged);
}

TEST_CASE("additivity over disjoint regions") {
  const FbmPath path = generate_path(HurstParameter(0.3), 1.0, 256, 2);
  const Mollifier m(0.01);
  const Region a = Region::dyadic_square(2, 1);
  const Region b = Region::dyadic_square(2, 2);
  const Region ab = Region::disjoint_union(a, b);
  for (double y : {-0.2, 0.0, 0.35}) {
    CHECK(alpha_eps(path, y, m, ab).value ==
          doctest::Approx(alpha_eps(path, y, m, a).value + alpha_eps(path, y, m, b).value).epsilon(1e-13));
    CHECK(alpha_prime_eps(path, y, m, ab).value ==
          doctest::Approx(alpha_prime_eps(path, y, m, a).value + alpha_prime_eps(path, y, m, b).value)
              .epsilon(1e-13)
              .scale(1.0));
  }
}

TEST_CASE("spatial integrals: total mass t^2/2 and zero for the derivative") {
  for (double h : {0.25, 0.5, 0.75}) {
    for (double eps : {0.005, 0.05}) {
      const double t = 1.5;
      const FbmPath path = generate_path(HurstParameter(h), t, 256, 9);
      const double reach = 2.0 * max_abs(path) + 20.0 * std::sqrt(eps);
      const double step = 0.2 * std::sqrt(eps);
      const auto count = static_cast<std::size_t>(std::ceil(2.0 * reach / step)) + 1;
      const UniformGrid grid = UniformGrid::spanning(-reach, reach, count);
      const Region d = Region::full_triangle(t);
      const Mollifier m(eps);
      CHECK(trapezoid(alpha_eps_on_grid(path, d, grid, m), grid.step) == doctest::Approx(t * t / 2.0).epsilon(1e-3));
      CHECK(std::abs(trapezoid(alpha_prime_eps_on_grid(path, d, grid, m), grid.step)) < 1e-3 * t * t);
    }
  }
}

TEST_CASE("alpha_eps is nonnegative and shrinks on D_kappa") {
  const FbmPath path = generate_path(HurstParameter(0.5), 1.0, 128, 4);
  const Mollifier m(0.02);
  for (double y : {0.0, 0.1, -0.4}) {
    const double full = alpha_eps(path, y, m).value;
    CHECK(full >= 0.0);
    CHECK(alpha_eps(path, y, m, Region::offset_triangle(1.0, 0.125)).value <= full);
  }
}

TEST_CASE("Tanaka-kernel estimator") {
  SUBCASE("equals the plain derivative at H = 1/2") {
    const FbmPath path = generate_path(HurstParameter(0.5), 1.0, 128, 6);
    const Mollifier m(0.01);
    for (double y : {-0.3, 0.0, 0.2}) CHECK(alpha_tilde_prime_eps(path, y, m).value == alpha_prime_eps(path, y, m).value);
  }
  SUBCASE("flags H >= 2/3") {
    const Mollifier m(0.01);
    CHECK_FALSE(alpha_tilde_prime_eps(generate_path(HurstParameter(0.6), 1.0, 32, 1), 0.1, m).outside_existence_range);
    CHECK(alpha_tilde_prime_eps(generate_path(HurstParameter(0.7), 1.0, 32, 1), 0.1, m).outside_existence_range);
  }
  SUBCASE("stabilises under grid refinement") {
    // Paths at 2^12 coarsened by subsampling. Single paths are noisy, so average |Cauchy difference| over seeds.
    const Mollifier m(0.02);
    const int seeds = 32;
    std::vector<double> mean_diff(3, 0.0);
    for (std::uint64_t seed = 0; seed < seeds; ++seed) {
      const FbmPath fine = generate_path(HurstParameter(0.4), 1.0, 1 << 12, seed);
      std::vector<double> values;
      for (std::size_t n : {512u, 1024u, 2048u, 4096u}) {
        std::vector<double> v;
        for (std::size_t i = 0; i <= n; ++i) v.push_back(fine.values()[i * (4096 / n)]);
        values.push_back(alpha_tilde_prime_eps(FbmPath(HurstParameter(0.4), 1.0, v, seed), 0.2, m).value);
      }
      for (std::size_t k = 1; k < values.size(); ++k) mean_diff[k - 1] += std::abs(values[k] - values[k - 1]) / seeds;
    }
    CHECK(mean_diff[1] < mean_diff[0]);
    CHECK(mean_diff[2] < mean_diff[1]);
  }
}

TEST_CASE("epsilon extrapolation") {
  SUBCASE("constant sequence") {
    const std::vector<SiltEstimate> l{fake(0.04, 2.5), fake(0.02, 2.5), fake(0.01, 2.5)};
    const SiltEstimate r = epsilon_extrapolate(l);
    CHECK(r.value == 2.5);
    CHECK(r.epsilon == 0.0);
    CHECK(r.converged);
  }
  SUBCASE("geometric error is removed exactly") {
    const double limit = -0.7, c = 0.3;
    std::vector<SiltEstimate> l;
    for (int k = 0; k < 4; ++k) l.push_back(fake(0.04 / std::pow(2.0, k), limit + c * std::pow(2.0, -k)));
    const SiltEstimate r = epsilon_extrapolate(l);
    CHECK(std::abs(r.value - limit) < 1e-10);
    CHECK(r.converged);
  }
  SUBCASE("oscillating ladder is flagged") {
    const std::vector<SiltEstimate> l{fake(0.04, 1.0), fake(0.02, 1.1), fake(0.01, 0.8)};
    CHECK_FALSE(epsilon_extrapolate(l).converged);
  }
  SUBCASE("malformed ladders are rejected") {
    const std::vector<SiltEstimate> short_ladder{fake(0.04, 1.0), fake(0.02, 1.0)};
    CHECK_THROWS_AS(epsilon_extrapolate(short_ladder), DomainError);
    const std::vector<SiltEstimate> uneven{fake(0.04, 1.0), fake(0.02, 1.0), fake(0.015, 1.0)};
    CHECK_THROWS_AS(epsilon_extrapolate(uneven), DomainError);
    std::vector<SiltEstimate> mixed{fake(0.04, 1.0), fake(0.02, 1.0), fake(0.01, 1.0)};
    mixed[2].y = 0.5;
    CHECK_THROWS_AS(epsilon_extrapolate(mixed), DomainError);
  }
  SUBCASE("default ladder on a fixed path converges") {
    const HurstParameter h(0.3);
    // The smallest rung needs increments t/n^H well below sqrt(eps), hence n = 2^12.
    const FbmPath path = generate_path(h, 1.0, 4096, 0);
    const auto eps = default_epsilon_ladder(1.0, h);
    CHECK(eps == std::vector<double>{0.04, 0.02, 0.01, 0.005});
    std::vector<SiltEstimate> l;
    for (double e : eps) l.push_back(alpha_prime_eps(path, 0.5, Mollifier(e)));
    CHECK(epsilon_extrapolate(l).converged);
  }
}

TEST_CASE("renormalisation subtracts the supplied mean") {
  const FbmPath path = generate_path(HurstParameter(0.55), 1.0, 128, 3);
  const Mollifier m(0.01);
  const double mean0 = mean_alpha_prime_eps(1.0, 0.0, 0.01, HurstParameter(0.55)).value;
  CHECK(mean0 == 0.0);
  CHECK(renormalized_alpha_prime(path, 0.0, m, mean0) == alpha_prime_eps(path, 0.0, m).value);

  // Centred by construction: averages to zero within 3 standard errors.
  const double y = 0.3;
  const double mean = mean_alpha_prime_eps(1.0, y, 0.01, HurstParameter(0.55)).value;
  std::vector<double> xs;
  for (std::uint64_t s = 0; s < 400; ++s)
    xs.push_back(renormalized_alpha_prime(generate_path(HurstParameter(0.55), 1.0, 128, s), y, m, mean));
  double sum = 0.0, ss = 0.0;
  for (double x : xs) sum += x;
  const double avg = sum / static_cast<double>(xs.size());
  for (double x : xs) ss += (x - avg) * (x - avg);
  const double se = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
  // The grid bias of n = 128 is far below the Monte Carlo error here.
  CHECK(std::abs(avg) < 3.0 * se);
}

TEST_CASE("dyadic squares decorrelate for Brownian motion") {
  const int seeds = 10000;
  const Mollifier m(0.02);
  std::vector<double> a, b;
  for (int s = 0; s < seeds; ++s) {
    const FbmPath path = generate_path(HurstParameter(0.5), 1.0, 32, static_cast<std::uint64_t>(s));
    a.push_back(alpha_eps(path, 0.1, m, Region::dyadic_square(2, 1)).value);
    b.push_back(alpha_eps(path, 0.1, m, Region::dyadic_square(2, 2)).value);
  }
  double ma = 0.0, mb = 0.0;
  for (int k = 0; k < seeds; ++k) {
    ma += a[k];
    mb += b[k];
  }
  ma /= seeds;
  mb /= seeds;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (int k = 0; k < seeds; ++k) {
    sab += (a[k] - ma) * (b[k] - mb);
    saa += (a[k] - ma) * (a[k] - ma);
    sbb += (b[k] - mb) * (b[k] - mb);
  }
  const double corr = sab / std::sqrt(saa * sbb);
  CHECK(std::abs(corr) < 4.0 / std::sqrt(static_cast<double>(seeds)));
}
