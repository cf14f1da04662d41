#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "kpiforge/error.hpp"
#include "kpiforge/stats/distributions.hpp"
#include "kpiforge/stats/hypothesis.hpp"
#include "../support/properties.hpp"

using namespace kpiforge;
using namespace kpiforge::stats;
using Catch::Approx;

namespace {

GroupedSample sample(std::vector<std::vector<double>> groups) {
  std::vector<Group> out;
  for (std::size_t i = 0; i < groups.size(); ++i) out.push_back({"g" + std::to_string(i), groups[i]});
  return GroupedSample(std::move(out));
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::io;
}

}  // namespace

TEST_CASE("grouped sample invariants") {
  CHECK(code_of([] { sample({{1, 2, 3}}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { sample({{1, 2}, {}}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { sample({{1}, {2}}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { sample({{1, NAN}, {2}}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { sample({{1, INFINITY}, {2}}); }) == ErrorCode::invalid_argument);
  const auto s = sample({{1, 2}, {3}});
  CHECK(s.group_count() == 2);
  CHECK(s.total_count() == 3);
}

TEST_CASE("one-way ANOVA on a hand-checked sample") {
  // Means 2 and 3, grand 2.5: SSB = 1.5, SSW = 4, F = 1.5 / 1 = 1.5.
  const auto t = one_way_anova(sample({{1, 2, 3}, {2, 3, 4}}));
  CHECK(t.ss_between == Approx(1.5).epsilon(1e-14));
  CHECK(t.ss_within == Approx(4.0).epsilon(1e-14));
  CHECK(t.ss_total == Approx(5.5).epsilon(1e-14));
  CHECK(t.df_between == 1);
  CHECK(t.df_within == 4);
  CHECK(t.df_total == 5);
  CHECK(t.ms_between == Approx(1.5));
  CHECK(t.ms_within == Approx(1.0));
  CHECK(t.f_stat == Approx(1.5).epsilon(1e-14));
  CHECK(t.p_value == Approx(0.2878641347266907).epsilon(1e-10));  // scipy.stats.f_oneway
}

TEST_CASE("ANOVA degenerate inputs") {
  const auto same = one_way_anova(sample({{4, 4}, {4, 4, 4}, {4}}));
  CHECK(same.f_stat == 0.0);
  CHECK(same.p_value == 1.0);
  CHECK(same.ss_total == 0.0);

  CHECK(code_of([] { one_way_anova(sample({{1, 1}, {2, 2}})); }) == ErrorCode::degenerate_input);

  // Equal means with spread: F = 0, p = 1.
  const auto flat = one_way_anova(sample({{1, 3}, {2, 2}, {0, 4}}));
  CHECK(flat.f_stat == 0.0);
  CHECK(flat.p_value == Approx(1.0));

  // A constant group contributes exactly zero within variation.
  const auto mixed = one_way_anova(sample({{0.1, 0.1, 0.1}, {0.2, 0.4}}));
  CHECK(mixed.ss_within == Approx(0.02).epsilon(1e-12));
}

TEST_CASE("ANOVA additivity, shift and scale invariance on random samples") {
  const auto r = testing::anova_additivity_and_invariance(1000, 20240601, 1e-9);
  INFO(r.first_failure);
  CHECK(r.cases == 1000);
  CHECK(r.ok());
}

TEST_CASE("ANOVA matches a direct recomputation on every small grid sample") {
  const auto r = testing::anova_bruteforce(8, 3, 1e-9);
  INFO(r.first_failure);
  CHECK(r.cases > 200000);
  CHECK(r.ok());
}

TEST_CASE("ANOVA is invariant to group and value order") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> d(0, 1);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::vector<double>> groups(2 + trial % 4);
    for (auto& g : groups) {
      g.resize(2 + rng() % 10);
      for (auto& v : g) v = d(rng) + static_cast<double>(rng() % 3);
    }
    const auto base = one_way_anova(sample(groups));
    auto shuffled = groups;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (auto& g : shuffled) std::shuffle(g.begin(), g.end(), rng);
    const auto other = one_way_anova(sample(shuffled));
    CHECK(other.f_stat == Approx(base.f_stat).epsilon(1e-12));
    CHECK(other.p_value == Approx(base.p_value).epsilon(1e-10));
    CHECK(other.ss_within == Approx(base.ss_within).epsilon(1e-12));
  }
}

TEST_CASE("pearson: reference values") {
  const std::vector<double> x{1, 2, 3, 4}, y{1, 3, 2, 4};
  const auto r = pearson(x, y);
  CHECK(r.r == Approx(0.8).epsilon(1e-14));
  CHECK(r.n_pairs == 4);
  CHECK(r.df == 2);
  CHECK(r.t_stat == Approx(1.8856180831641267).epsilon(1e-12));
  CHECK(r.p_two_tailed == Approx(0.2).margin(0.001));

  const std::vector<double> a{1, 2, 3}, b{2, 4, 6}, c{3, 2, 1};
  const auto pos = pearson(a, b);
  CHECK(pos.r == 1.0);
  CHECK(pos.p_two_tailed == 0.0);
  CHECK(std::isinf(pos.t_stat));
  const auto neg = pearson(a, c);
  CHECK(neg.r == -1.0);
  CHECK(neg.p_two_tailed == 0.0);
  CHECK(neg.t_stat < 0);
}

TEST_CASE("pearson: errors") {
  const std::vector<double> three{1, 2, 3}, two{1, 2}, flat{5, 5, 5};
  CHECK(code_of([&] { pearson(three, two); }) == ErrorCode::length_mismatch);
  CHECK(code_of([&] { pearson(two, two); }) == ErrorCode::too_few_points);
  CHECK(code_of([&] { pearson(three, flat); }) == ErrorCode::constant_series);
  CHECK(code_of([&] { pearson(flat, three); }) == ErrorCode::constant_series);
}

TEST_CASE("pearson: symmetry, affine maps and range") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> d(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + rng() % 60;
    std::vector<double> x(n), y(n);
    const double rho = d(rng);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = d(rng);
      y[i] = rho * x[i] + d(rng);
    }
    const auto xy = pearson(x, y);
    CHECK(std::fabs(xy.r) <= 1.0);
    CHECK(xy.p_two_tailed >= 0.0);
    CHECK(xy.p_two_tailed <= 1.0);
    CHECK(pearson(y, x).r == Approx(xy.r).epsilon(1e-12));

    auto xa = x, yneg = y;
    for (auto& v : xa) v = 3.5 * v - 20.0;
    for (auto& v : yneg) v = -v;
    CHECK(pearson(xa, y).r == Approx(xy.r).epsilon(1e-10).margin(1e-13));
    CHECK(pearson(x, yneg).r == Approx(-xy.r).epsilon(1e-12).margin(1e-15));
    CHECK(pearson(x, yneg).p_two_tailed == Approx(xy.p_two_tailed).epsilon(1e-10));
  }
}

TEST_CASE("chi-square independence") {
  const auto even = chi_square_independence({{10, 10}, {10, 10}});
  CHECK(even.statistic == 0.0);
  CHECK(even.df == 1);
  CHECK(even.p_value == 1.0);

  const auto a = chi_square_independence({{20, 10}, {10, 20}});
  CHECK(a.statistic == Approx(20.0 / 3.0).epsilon(1e-14));
  CHECK(a.p_value == Approx(0.009823274507519235).epsilon(1e-10));  // scipy, correction=False

  const auto b = chi_square_independence({{5, 0}, {0, 5}});
  CHECK(b.statistic == Approx(10.0).epsilon(1e-14));
  CHECK(b.p_value == Approx(0.001565402258002549).epsilon(1e-10));

  const auto c = chi_square_independence({{3, 7, 2}, {4, 1, 9}});
  CHECK(c.df == 2);
  CHECK(c.p_value == Approx(chi_square_sf(c.statistic, 2)));
}

TEST_CASE("chi-square errors") {
  CHECK(code_of([] { chi_square_independence({}); }) == ErrorCode::empty_table);
  CHECK(code_of([] { chi_square_independence({{1, 2}}); }) == ErrorCode::empty_table);
  CHECK(code_of([] { chi_square_independence({{1, 0}, {2, 0}}); }) == ErrorCode::zero_marginal);
  CHECK(code_of([] { chi_square_independence({{0, 0}, {2, 1}}); }) == ErrorCode::zero_marginal);
  CHECK(code_of([] { chi_square_independence({{1, 2}, {3}}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { chi_square_independence({{1, -2}, {3, 4}}); }) == ErrorCode::invalid_argument);
}
