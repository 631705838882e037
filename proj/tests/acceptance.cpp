// Acceptance criteria 1-13. Usage: acceptance <n> | all
// Prints one "criterion NN PASS|FAIL ..." line per criterion; exit status is
// nonzero when any requested criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "silt/arcs.hpp"
#include "silt/estimators.hpp"
#include "silt/expectation.hpp"
#include "silt/local_time.hpp"
#include "silt/regularity.hpp"

using namespace silt;

namespace {

const double kSqrt2Pi = std::sqrt(2.0 * std::numbers::pi);

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel_err(double value, double target) { return std::abs(value - target) / std::abs(target); }

// ==============================================
// 1: subcritical constant at H = 1/4
// ==============================================

Verdict c01() {
  const double y = 1e-4;
  const double ratio = mean_alpha_prime(1.0, y, HurstParameter(0.25)).value / y;
  const double target = -4.0 / kSqrt2Pi;
  // Independent route through the rescaled double integral.
  const double check = mean_alpha_prime_rescaled(1.0, y, HurstParameter(0.25)).value / y;
  const double err = rel_err(ratio, target);
  return {err < 0.01, fmt("E/y = %.6f (rescaled route %.6f), target %.6f, rel err %.4f, tol 0.01", ratio, check,
                          target, err)};
}

// ==============================================
// 2: H = 1/2 one-sided limit and jump
// ==============================================

Verdict c02() {
  const HurstParameter h(0.5);
  const double y = 1e-6;
  const double up = mean_alpha_prime(1.0, y, h).value;
  const double down = mean_alpha_prime(1.0, -y, h).value;
  const double integral = supercritical_integral(h);
  const double constant = asymptotic_constant(1.0, h).constant;
  const bool limit_ok = rel_err(up, -1.0) < 0.01;
  const bool jump_ok = rel_err(std::abs(up - down), 2.0) < 0.02;
  const bool constant_ok = rel_err(integral, kSqrt2Pi) < 1e-8 && rel_err(constant, -1.0) < 1e-8;
  return {limit_ok && jump_ok && constant_ok && !regime_classify(h).continuous_at_zero,
          fmt("E(1e-6) = %.7f (tol 1%%), jump %.7f (tol 2%%), v-integral/sqrt(2pi) = %.10f", up, up - down,
              integral / kSqrt2Pi)};
}

// ==============================================
// 3: critical H = 1/3
// ==============================================

Verdict c03() {
  const HurstParameter h(1.0 / 3.0);
  const double y = 1e-7;
  const double ratio = mean_alpha_prime(1.0, y, h).value / (y * std::log(y));
  const double target = 3.0 / kSqrt2Pi;
  const double err = rel_err(ratio, target);
  return {err < 0.05, fmt("E/(y log y) = %.5f, target %.5f, rel err %.4f, tol 0.05", ratio, target, err)};
}

// ==============================================
// 4: Monte Carlo mean against quadrature
// ==============================================

Verdict c04() {
  const HurstParameter h(0.3);
  const int paths = 10000;
  const Mollifier m(0.01);
  std::vector<double> v(paths);
  for (int s = 0; s < paths; ++s)
    v[static_cast<std::size_t>(s)] =
        alpha_prime_eps(generate_path(h, 1.0, 1024, static_cast<std::uint64_t>(s)), 0.5, m).value;
  double sum = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / paths;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double se = std::sqrt(ss / (paths - 1) / paths);
  const double oracle = mean_alpha_prime_eps(1.0, 0.5, 0.01, h).value;
  const double z = (mean - oracle) / se;
  return {std::abs(z) < 3.0, fmt("MC mean %.6f +- %.6f, oracle %.6f, z = %.2f, tol |z| < 3", mean, se, oracle, z)};
}

// ==============================================
// 5: occupation-time formula for alpha
// ==============================================

Verdict c05() {
  const Mollifier m(0.01);
  const TestFunction gauss = TestFunction::gaussian(0.5, 2.0);
  const TestFunction one = TestFunction::constant();
  double worst_gauss = 0.0, worst_one = 0.0, worst_mass = 0.0;
  for (double h : {0.25, 0.4, 0.5}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const FbmPath path = generate_path(HurstParameter(h), 1.0, 1 << 12, seed);
      const UniformGrid grid = covering_y_grid(path, Region::full_triangle(1.0), m, 0.05);
      const OccupationCheck g = occupation_check_alpha(path, gauss, grid, m);
      const OccupationCheck c = occupation_check_alpha(path, one, grid, m);
      worst_gauss = std::max(worst_gauss, g.residual());
      worst_one = std::max(worst_one, c.residual());
      worst_mass = std::max(worst_mass, rel_err(c.rhs, 0.5));
    }
  }
  return {worst_gauss < 1e-2 && worst_one < 1e-2 && worst_mass < 1e-3,
          fmt("max residual gaussian %.2e, constant %.2e (tol 1e-2); mass rel err %.2e (tol 1e-3)", worst_gauss,
              worst_one, worst_mass)};
}

// ==============================================
// 6: derivative occupation formula over D and A_1^1
// ==============================================

Verdict c06() {
  const Mollifier m(0.01);
  const TestFunction gauss = TestFunction::gaussian(0.5, 2.0);
  const TestFunction lin = TestFunction::linear();
  const Region a11 = Region::dyadic_square(1, 1);
  const Region a12 = Region::dyadic_square(2, 1);
  const Region a22 = Region::dyadic_square(2, 2);
  const Region three = Region::disjoint_union(Region::disjoint_union(a11, a12), a22);
  double worst_gauss = 0.0, worst_mass = 0.0, worst_add = 0.0;
  for (double h : {0.25, 0.4, 0.5}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const FbmPath path = generate_path(HurstParameter(h), 1.0, 1 << 12, seed);
      for (const Region& region : {Region::full_triangle(1.0), a11}) {
        const UniformGrid grid = covering_y_grid(path, region, m, 0.05);
        worst_gauss = std::max(worst_gauss, occupation_check_derivative(path, gauss, grid, m, region).residual());
        const OccupationCheck mass = occupation_check_derivative(path, lin, grid, m, region);
        worst_mass = std::max(worst_mass, rel_err(mass.rhs, region.area()));
      }
      const double parts = alpha_prime_eps(path, 0.3, m, a11).value + alpha_prime_eps(path, 0.3, m, a12).value +
                           alpha_prime_eps(path, 0.3, m, a22).value;
      const double whole = alpha_prime_eps(path, 0.3, m, three).value;
      worst_add = std::max(worst_add, std::abs(whole - parts) / std::max(1e-300, std::abs(whole)));
    }
  }
  return {worst_gauss < 1e-2 && worst_mass < 1e-3 && worst_add < 1e-13,
          fmt("max residual gaussian %.2e (tol 1e-2); g=x mass rel err %.2e (tol 1e-3); additivity %.1e", worst_gauss,
              worst_mass, worst_add)};
}

// ==============================================
// 7: derivative identity, second order in h
// ==============================================

Verdict c07() {
  const FbmPath path = generate_path(HurstParameter(0.3), 1.0, 1024, 0);
  const Mollifier m(0.02);
  const Region d = Region::full_triangle(1.0);
  const UniformGrid g1 = UniformGrid::symmetric(1.0, 1e-3);
  const UniformGrid g2 = UniformGrid::symmetric(1.0, 2e-3);
  const auto prime = alpha_prime_eps_on_grid(path, d, g1, m);
  double scale = 0.0;
  for (double v : prime) scale = std::max(scale, std::abs(v));
  const double e1 = derivative_consistency(path, g1, m);
  const double e2 = derivative_consistency(path, g2, m);
  const double order = std::log2(e2 / e1);
  return {e1 < 1e-3 * scale && order >= 1.8 && order <= 2.2,
          fmt("max discrepancy %.2e at h=1e-3 (tol %.2e), observed order %.3f (band [1.8, 2.2])", e1, 1e-3 * scale,
              order)};
}

// ==============================================
// 8: local-time route at H = 1/2
// ==============================================

Verdict c08() {
  double worst = 0.0;
  std::ostringstream os;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const FbmPath path = generate_path(HurstParameter(0.5), 1.0, 1 << 14, seed);
    const LocalTimeProfile p = local_time(path, default_bin_width(path));
    // The histogram correlation smooths increments with a triangle kernel of variance bw^2 / 6.
    const Mollifier m(p.bin_width * p.bin_width / 6.0);
    const double via_lt = alpha_via_local_time(p, 0.0).value;
    const double direct = alpha_eps(path, 0.0, m).value;
    worst = std::max(worst, rel_err(via_lt, direct));
    os << fmt(" %.4f/%.4f", via_lt, direct);
  }
  return {worst < 0.05, fmt("max rel diff %.4f (tol 0.05); local time/direct:", worst) + os.str()};
}

// ==============================================
// 9: golden arc diagram
// ==============================================

Verdict c09() {
  using namespace silt::arcs;
  const PairConfiguration c = PairConfiguration::parse("r1 r2 s2 r3 r4 s1 s3 r5 s4 s5 r6 s6");
  const std::vector<std::set<int>> quoted{{1}, {1, 2}, {1}, {1, 3}, {1, 3, 4}, {3, 4}, {4}, {4, 5}, {5}, {}, {6}};
  bool u_ok = true;
  const auto u = compute_u_vectors(c);
  for (std::size_t j = 0; j < u.size(); ++j) {
    std::set<int> got;
    for (std::size_t k = 0; k < u[j].coefficients.size(); ++k)
      if (u[j].coefficients[k] != 0) got.insert(static_cast<int>(k + 1));
    u_ok = u_ok && got == quoted[j];
  }
  const auto tags = classify_gaps(c);
  bool class_ok = true;
  for (int j : {1, 2, 3, 6}) class_ok = class_ok && tags[static_cast<std::size_t>(j - 1)] == GapTag::increasing;
  for (int j : {4, 5, 7}) class_ok = class_ok && tags[static_cast<std::size_t>(j - 1)] == GapTag::decreasing;
  const FreeVariables f = find_free_variables(c);
  const bool s_ok = f.s_free == std::set<int>{1};
  const bool r_ok = f.r_free == std::set<int>{4};
  const bool iso_ok = find_isolated_intervals(c) == std::set<int>{2, 6};
  auto list = [](const std::set<int>& s) {
    std::string out;
    for (int k : s) out += (out.empty() ? "" : ",") + std::to_string(k);
    return "{" + out + "}";
  };
  std::set<int> inc;
  for (std::size_t j = 0; j < tags.size(); ++j)
    if (tags[j] == GapTag::increasing) inc.insert(static_cast<int>(j + 1));
  return {u_ok && class_ok && s_ok && r_ok && iso_ok,
          fmt("u-vectors %s, classification %s (increasing %s), s-free %s %s, r-free %s %s, isolated %s",
              u_ok ? "match" : "differ", class_ok ? "match" : "differ", list(inc).c_str(), list(f.s_free).c_str(),
              s_ok ? "match" : "differ", list(f.r_free).c_str(), r_ok ? "match" : "differ",
              iso_ok ? "match" : "differ")};
}

// ==============================================
// 10: spanning lemma, exhaustive for n <= 4
// ==============================================

Verdict c10() {
  using namespace silt::arcs;
  int configs = 0, clause_i = 0, clause_i_mirrored = 0, clause_ii = 0, spanning_total = 0, spanning_ok = 0,
      double_twos = 0;
  for (int n = 1; n <= 4; ++n) {
    for (const auto& c : enumerate_configurations(n)) {
      ++configs;
      clause_i += increasing_clause(c) ? 1 : 0;
      clause_i_mirrored += mirrored_increasing_clause(c) ? 1 : 0;
      clause_ii += decreasing_clause(c) ? 1 : 0;
      const auto ms = enumerate_m_assignments(c);
      for (const auto& m : ms) double_twos += has_consecutive_twos(m) ? 1 : 0;
      if (!find_isolated_intervals(c).empty()) continue;
      for (const auto& m : ms) {
        ++spanning_total;
        spanning_ok += build_spanning_sets(c, m).ok ? 1 : 0;
      }
    }
  }
  const bool pass = clause_i == configs && clause_ii == configs && spanning_ok == spanning_total && double_twos == 0;
  return {pass, fmt("%d configurations: clause (i) %d, clause (i) mirrored %d, clause (ii) %d; spanning sets %d/%d; "
                    "consecutive 2s %d",
                    configs, clause_i, clause_i_mirrored, clause_ii, spanning_ok, spanning_total, double_twos)};
}

// ==============================================
// 11: exponent thresholds
// ==============================================

Verdict c11() {
  using namespace silt::arcs;
  const double d = 1e-6;
  int checks = 0, failures = 0;
  auto expect = [&](bool got, bool want) {
    ++checks;
    failures += got == want ? 0 : 1;
  };
  auto conv = [](double h, double lambda, double gamma, ExponentMode mode, ExponentSetting setting) {
    return convergence_exponents(HurstParameter(h), lambda, gamma, mode, setting).converges;
  };
  // Main setting, eps mode: lambda < (1/H - 2) / 2; witness min(1/H - 2, 1) / 2.
  for (double h : {0.2, 0.3, 0.35, 0.4, 0.45}) {
    const double edge = (1.0 / h - 2.0) / 2.0;
    if (edge <= 1.0) {
      expect(conv(h, edge - d, 1.0, ExponentMode::eps, ExponentSetting::main), true);
      if (edge + d <= 1.0) expect(conv(h, edge + d, 1.0, ExponentMode::eps, ExponentSetting::main), false);
    }
    const double witness = std::min(1.0 / h - 2.0, 1.0) / 2.0;
    expect(conv(h, witness - d, 1.0, ExponentMode::eps, ExponentSetting::main), true);
    expect(conv(h, std::max(0.0, witness / 2.0), 1.0, ExponentMode::y, ExponentSetting::main), true);
  }
  // Main setting, y mode: lambda < 1/H - 2.
  for (double h : {0.35, 0.4, 0.45}) {
    const double edge = 1.0 / h - 2.0;
    expect(conv(h, edge - d, 1.0, ExponentMode::y, ExponentSetting::main), true);
    expect(conv(h, edge + d, 1.0, ExponentMode::y, ExponentSetting::main), false);
  }
  // Main setting, time: gamma > 2H.
  for (double h : {0.1, 0.25, 0.4, 0.49}) {
    expect(conv(h, 0.0, 2.0 * h + d, ExponentMode::t, ExponentSetting::main), true);
    expect(conv(h, 0.0, 2.0 * h - d, ExponentMode::t, ExponentSetting::main), false);
  }
  // Appendix: lambda < 1/H - 3/2 and beta < 1 - 3H/2, i.e. gamma > 3H/2.
  for (double h : {0.45, 0.5, 0.55, 0.6, 0.65}) {
    const double edge = 1.0 / h - 1.5;
    if (edge - d >= 0.0) expect(conv(h, edge - d, 1.0, ExponentMode::y, ExponentSetting::appendix), true);
    if (edge + d <= 1.0) expect(conv(h, edge + d, 1.0, ExponentMode::y, ExponentSetting::appendix), false);
  }
  for (double h : {0.2, 0.4, 0.5, 0.6}) {
    const double beta_edge = 1.0 - 1.5 * h;
    expect(conv(h, 0.0, 1.0 - (beta_edge - d), ExponentMode::t, ExponentSetting::appendix), true);
    expect(conv(h, 0.0, 1.0 - (beta_edge + d), ExponentMode::t, ExponentSetting::appendix), false);
  }
  return {failures == 0, fmt("%d/%d boundary checks at +-1e-6 agree", checks - failures, checks)};
}

// ==============================================
// 12: time Hölder exponent of alpha_t(y)
// ==============================================

Verdict c12() {
  bool pass = true, warning_only = true;
  std::string detail;
  for (double h : {0.3, 0.5}) {
    const std::size_t n = 1024;
    FieldSamples field{1, n + 1, 1.0, 1.0 / static_cast<double>(n), {}};
    for (std::uint64_t s = 0; s < 64; ++s)
      field.replicates.push_back(alpha_eps_time_profile(generate_path(HurstParameter(h), 1.0, n, s), 0.0, Mollifier(0.01)));
    const auto bound = theoretical_bound(HurstParameter(h), EstimateKind::alpha, HolderAxis::time);
    const HolderReport r = holder_exponent_estimate(field, HolderAxis::time, bound);
    const bool in_band = std::abs(r.estimated_exponent - *bound) <= 0.15;
    if (!in_band) {
      pass = false;
      warning_only = warning_only && !r.reliable;
    }
    detail += fmt("H=%.1f exponent %.3f (raw slope/2 %.3f) vs %.2f +- 0.15, r^2 %.4f; ", h, r.estimated_exponent,
                  r.raw_slope / 2.0, *bound, r.r_squared);
  }
  if (!pass && warning_only) return {true, "WARNING (unreliable fit) " + detail};
  return {pass, detail};
}

// ==============================================
// 13: local nondeterminism
// ==============================================

Verdict c13() {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss;
  auto random_case = [&](int n) {
    std::vector<double> t(static_cast<std::size_t>(2 * n));
    for (double& x : t) x = unif(rng);
    std::sort(t.begin(), t.end());
    std::vector<double> w(static_cast<std::size_t>(2 * n - 1));
    for (double& x : w) x = gauss(rng);
    return std::make_pair(ConfigurationTimes(t), w);
  };
  double bm_dev = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const auto [times, w] = random_case(1 + k % 4);
    bm_dev = std::max(bm_dev, std::abs(lnd_ratio(times, w, HurstParameter(0.5)) - 1.0));
  }
  bool pass = bm_dev < 1e-12;
  std::string detail = fmt("H=0.5 max |ratio-1| %.1e; ", bm_dev);
  for (double h : {0.3, 0.7}) {
    double inf = 1e300;
    for (int k = 0; k < 10000; ++k) {
      const auto [times, w] = random_case(1 + k % 4);
      inf = std::min(inf, lnd_ratio(times, w, HurstParameter(h)));
    }
    pass = pass && inf > 0.0;
    detail += fmt("H=%.1f empirical infimum %.4g; ", h, inf);
  }
  return {pass, detail};
}

struct Criterion {
  int id;
  double runtime_limit;  // seconds, 0 when none is set
  std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{{1, 5, c01},   {2, 10, c02},  {3, 10, c03}, {4, 180, c04}, {5, 120, c05},
                                   {6, 0, c06},   {7, 60, c07},  {8, 120, c08}, {9, 0, c09},  {10, 30, c10},
                                   {11, 0, c11},  {12, 300, c12}, {13, 0, c13}};
  const std::string which = argc > 1 ? argv[1] : "all";
  int failed = 0;
  for (const auto& c : all) {
    if (which != "all" && std::stoi(which) != c.id) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool slow = c.runtime_limit > 0.0 && secs > c.runtime_limit;
    const bool pass = v.pass && !slow;
    std::printf("criterion %02d %s  %s [%.1f s%s]\n", c.id, pass ? "PASS" : "FAIL", v.detail.c_str(), secs,
                slow ? fmt(", over the %.0f s budget", c.runtime_limit).c_str() : "");
    std::fflush(stdout);
    failed += pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
