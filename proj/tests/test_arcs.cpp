#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <stdexcept>
#include <vector>

#include "silt/arcs.hpp"
#include "silt/error.hpp"

using namespace silt;
using namespace silt::arcs;

namespace {

const char* kSixArcWord = "r1 r2 s2 r3 r4 s1 s3 r5 s4 s5 r6 s6";

std::vector<int> p(int n, std::initializer_list<int> ks) {
  std::vector<int> v(static_cast<std::size_t>(n), 0);
  for (int k : ks) v[static_cast<std::size_t>(k - 1)] = 1;
  return v;
}

std::vector<PairConfiguration> all_up_to(int n_max) {
  std::vector<PairConfiguration> out;
  for (int n = 1; n <= n_max; ++n) {
    auto c = enumerate_configurations(n);
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

}  // namespace

TEST_CASE("parsing and validation") {
  const PairConfiguration c = PairConfiguration::parse("r1,r2, s1 s2");
  CHECK(c.n() == 2);
  CHECK(c.to_string() == "r1,r2,s1,s2");
  CHECK(c.r_position(2) == 2);
  CHECK(c.s_position(1) == 3);
  CHECK_THROWS_AS(PairConfiguration::parse("s1,r1"), std::invalid_argument);
  CHECK_THROWS_AS(PairConfiguration::parse("r1,r1"), std::invalid_argument);
  CHECK_THROWS_AS(PairConfiguration::parse("r1,s1,r3,s3"), std::invalid_argument);
  CHECK_THROWS_AS(PairConfiguration::parse("r1,x1"), std::invalid_argument);
  CHECK_THROWS_AS(PairConfiguration::parse(""), std::invalid_argument);
}

TEST_CASE("enumeration counts and equivalence classes") {
  CHECK(enumerate_configurations(1).size() == 1);
  CHECK(enumerate_configurations(1)[0].to_string() == "r1,s1");
  const auto two = enumerate_configurations(2);
  CHECK(two.size() == 6);
  CHECK(equivalence_classes(2).size() == 3);
  CHECK(enumerate_configurations(3).size() == 90);
  CHECK(enumerate_configurations(4).size() == 2520);
  CHECK_THROWS_AS(enumerate_configurations(6), DomainError);
  std::set<std::string> seen;
  for (const auto& c : enumerate_configurations(3)) CHECK(seen.insert(c.to_string()).second);
  // Every class of n = 2 has a representative among the three canonical shapes.
  std::set<std::string> canon;
  for (const auto& c : two) canon.insert(canonical_form(c).to_string());
  CHECK(canon == std::set<std::string>{"r1,s1,r2,s2", "r1,r2,s1,s2", "r1,r2,s2,s1"});
}

TEST_CASE("the example diagram") {
  const PairConfiguration c = PairConfiguration::parse(kSixArcWord);
  const auto u = compute_u_vectors(c);
  REQUIRE(u.size() == 11);
  const std::vector<std::vector<int>> expected{p(6, {1}),       p(6, {1, 2}), p(6, {1}),    p(6, {1, 3}),
                                               p(6, {1, 3, 4}), p(6, {3, 4}), p(6, {4}),    p(6, {4, 5}),
                                               p(6, {5}),       p(6, {}),     p(6, {6})};
  for (std::size_t j = 0; j < u.size(); ++j) {
    CHECK(u[j].gap_index == static_cast<int>(j + 1));
    CHECK(u[j].coefficients == expected[j]);
  }
  CHECK(find_isolated_intervals(c) == std::set<int>{2, 6});
  CHECK(verify_span(u, 6));

  // Direct reading of the definitions (see the README for the comparison with the quoted lists).
  const auto tags = classify_gaps(c);
  std::set<int> inc;
  for (std::size_t j = 0; j < tags.size(); ++j)
    if (tags[j] == GapTag::increasing) inc.insert(static_cast<int>(j + 1));
  CHECK(inc == std::set<int>{1, 2, 4, 5, 8, 11});
  const FreeVariables f = find_free_variables(c);
  CHECK(f.s_free == std::set<int>{2, 6});
  CHECK(f.r_free == std::set<int>{2, 5, 6});
}

TEST_CASE("small configurations by inspection") {
  const PairConfiguration one = PairConfiguration::parse("r1 s1");
  CHECK(compute_u_vectors(one).size() == 1);
  CHECK(compute_u_vectors(one)[0].coefficients == std::vector<int>{1});
  CHECK(classify_gaps(one)[0] == GapTag::increasing);
  CHECK(find_free_variables(one).s_free == std::set<int>{1});
  CHECK(find_free_variables(one).r_free == std::set<int>{1});
  CHECK(find_isolated_intervals(one) == std::set<int>{1});

  const PairConfiguration nested = PairConfiguration::parse("r1 r2 s2 s1");
  CHECK(find_free_variables(nested).s_free == std::set<int>{2});
  CHECK(find_free_variables(nested).r_free == std::set<int>{2});

  const PairConfiguration crossing = PairConfiguration::parse("r1 r2 s1 s2");
  CHECK(find_isolated_intervals(crossing).empty());
  const auto spans = build_spanning_sets(crossing, enumerate_m_assignments(crossing).front());
  CHECK(spans.ok);
  CHECK(spans.a == std::set<int>{1, 2});
}

TEST_CASE("integer rank and spans") {
  CHECK(verify_span({{{1, 0}, 1}, {{1, 1}, 2}}, 2));
  CHECK_FALSE(verify_span({{{1, 1}, 1}}, 2));
  CHECK(integer_rank({{2, 4, 6}, {1, 2, 3}, {0, 0, 0}}) == 1);
  CHECK(integer_rank({{0, 3, 1}, {2, 0, 0}, {1, 1, 1}}) == 3);
  CHECK(same_span({{1, 0}, {0, 1}}, {{1, 1}, {1, -1}}));
  CHECK_FALSE(same_span({{1, 0}}, {{0, 1}}));
}

TEST_CASE("structural invariants over every configuration with n <= 4") {
  const auto configs = all_up_to(4);
  CHECK(configs.size() == 2617);
  for (const auto& c : configs) {
    const int n = c.n();
    const auto u = compute_u_vectors(c);
    const auto tags = classify_gaps(c);
    REQUIRE(u.size() == static_cast<std::size_t>(2 * n - 1));
    // Telescoping: each step adds or removes exactly one p_k, ending at 0.
    std::vector<int> running(static_cast<std::size_t>(n), 0);
    for (int pos = 1; pos <= 2 * n; ++pos) {
      const Endpoint e = c.word()[static_cast<std::size_t>(pos - 1)];
      running[static_cast<std::size_t>(e.k - 1)] += e.is_s ? -1 : 1;
      if (pos < 2 * n) {
        CHECK(running == u[static_cast<std::size_t>(pos - 1)].coefficients);
        CHECK((tags[static_cast<std::size_t>(pos - 1)] == GapTag::increasing) == !e.is_s);
      }
    }
    CHECK(running == std::vector<int>(static_cast<std::size_t>(n), 0));

    const FreeVariables f = find_free_variables(c);
    for (int k : find_isolated_intervals(c)) {
      CHECK(f.s_free.contains(k));
      CHECK(f.r_free.contains(k));
    }
    CHECK(mirrored_increasing_clause(c));
    CHECK(decreasing_clause(c));

    // Reversal duality: r-free and s-free swap; left tags map to swapped right tags.
    const PairConfiguration m = mirror(c);
    const FreeVariables fm = find_free_variables(m);
    CHECK(fm.s_free == f.r_free);
    CHECK(fm.r_free == f.s_free);
    CHECK(mirror(m) == c);
    // Gap j's left endpoint in c is gap (2n - j)'s right endpoint in the mirror, with r and s swapped.
    for (int j = 1; j <= 2 * n - 1; ++j) {
      const bool left_is_r = tags[static_cast<std::size_t>(j - 1)] == GapTag::increasing;
      CHECK(m.word()[static_cast<std::size_t>(2 * n - j)].is_s == left_is_r);
    }
  }
}

TEST_CASE("the increasing clause read literally fails on the crossing pair") {
  const PairConfiguration crossing = PairConfiguration::parse("r1 r2 s1 s2");
  CHECK_FALSE(increasing_clause(crossing));
  CHECK(mirrored_increasing_clause(crossing));
}

TEST_CASE("connected components") {
  const auto parts = connected_components(PairConfiguration::parse("r1 r2 s1 s2 r3 s3 r4 r5 s5 s4"));
  REQUIRE(parts.size() == 3);
  CHECK(parts[0].to_string() == "r1,r2,s1,s2");
  CHECK(parts[1].to_string() == "r1,s1");
  CHECK(parts[2].to_string() == "r1,r2,s2,s1");
}

TEST_CASE("m-assignments") {
  const auto one = enumerate_m_assignments(PairConfiguration::parse("r1 s1"));
  REQUIRE(one.size() == 1);
  CHECK(one[0].m == std::vector<int>{2});
  for (const auto& c : all_up_to(3)) {
    const auto ms = enumerate_m_assignments(c);
    std::size_t bound = 1;
    for (int k = 0; k < c.n(); ++k) bound *= 4;
    CHECK(ms.size() <= bound);
    for (const auto& m : ms) {
      CHECK_FALSE(has_consecutive_twos(m));
      int total = 0;
      for (int x : m.m) {
        CHECK(x >= 0);
        CHECK(x <= 2);
        total += x;
      }
      CHECK(total <= 2 * c.n());
    }
  }
  CHECK(has_consecutive_twos(MAssignment{{1, 2, 2, 0}}));
}

TEST_CASE("spanning sets") {
  CHECK_THROWS_AS(build_spanning_sets(PairConfiguration::parse("r1 s1 r2 s2"), MAssignment{{1, 0, 1}}), DomainError);
  for (const auto& c : all_up_to(4)) {
    if (!find_isolated_intervals(c).empty()) continue;
    for (const auto& m : enumerate_m_assignments(c)) {
      const SpanningSets s = build_spanning_sets(c, m);
      INFO(c.to_string());
      CHECK(s.ok);
    }
  }
}

TEST_CASE("convergence exponents") {
  const HurstParameter h3(0.3);
  SUBCASE("quoted arithmetic") {
    const auto eps = convergence_exponents(h3, 0.2, 1.0, ExponentMode::eps, ExponentSetting::main);
    CHECK(eps.d_value == doctest::Approx(1.0 / 0.3 - 1.4));
    CHECK(eps.converges);
    CHECK(convergence_exponents(h3, 0.2, 1.0, ExponentMode::y, ExponentSetting::main).converges);
    const auto app = convergence_exponents(HurstParameter(0.5), 0.0, 1.0, ExponentMode::y, ExponentSetting::appendix);
    CHECK(app.d_value == doctest::Approx(1.5));
    CHECK(app.converges);
    CHECK_FALSE(
        convergence_exponents(HurstParameter(0.6), 0.2, 1.0, ExponentMode::y, ExponentSetting::appendix).converges);
  }
  SUBCASE("witness and monotonicity for H < 1/2") {
    for (double h : {0.1, 0.25, 0.4, 0.49}) {
      const HurstParameter hp(h);
      const double witness = (1.0 / h - 2.0) / 4.0;
      if (witness <= 1.0) CHECK(convergence_exponents(hp, witness, 1.0, ExponentMode::y, ExponentSetting::main).converges);
      // Sweep lambda downwards: once converging, it must stay converging.
      bool prev = false;
      for (int k = 100; k >= 0; --k) {
        const double lambda = k / 100.0;
        const bool now = convergence_exponents(hp, lambda, 1.0, ExponentMode::y, ExponentSetting::main).converges;
        CHECK((now || !prev));
        prev = now;
      }
    }
  }
  SUBCASE("per-gap exponents") {
    const auto r = convergence_exponents(h3, 0.2, 1.0, ExponentMode::y, ExponentSetting::main, MAssignment{{2, 0, 1}});
    REQUIRE(r.per_gap.size() == 3);
    CHECK(r.per_gap[0] == doctest::Approx(1.0 / 0.3 - 1.2));
    CHECK(r.per_gap[1] == doctest::Approx(1.0 / 0.3));
    CHECK(r.per_gap[2] == doctest::Approx(1.0 / 0.3 - 0.6));
  }
  SUBCASE("parameter ranges") {
    CHECK_THROWS_AS(convergence_exponents(h3, -0.1, 1.0, ExponentMode::y, ExponentSetting::main), DomainError);
    CHECK_THROWS_AS(convergence_exponents(h3, 0.1, 0.0, ExponentMode::t, ExponentSetting::main), DomainError);
  }
}
