#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "perc/rng.hpp"
#include "perc/stats.hpp"

using namespace perc;

TEST_CASE("estimate records implement the CI contract") {
  std::vector<double> vals(50, 0.0);
  for (size_t i = 0; i < 25; ++i) vals[i] = 1.0;
  EstimateRecord r = make_estimate("coin", 8, vals, 100);
  CHECK(r.mean == 0.5);
  CHECK(r.samples == 50);
  CHECK(r.attempts == 100);
  CHECK(r.ci_lo == doctest::Approx(r.mean - 1.96 * r.se));
  CHECK(r.ci_hi == doctest::Approx(r.mean + 1.96 * r.se));
  CHECK(r.ci_valid);
  CHECK(!make_estimate("tiny", 1, {1.0, 0.0}, 2).ci_valid);
}

TEST_CASE("power-law fit on exact data") {
  std::vector<FitPoint> quad;
  for (double n : {4.0, 8.0, 16.0, 32.0}) quad.push_back({n, n * n, 0.0});
  FitResult f = fit_power_law(quad);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.slope_se == doctest::Approx(0.0).epsilon(1e-9));

  std::vector<FitPoint> flat;
  for (double n : {4.0, 8.0, 16.0}) flat.push_back({n, 3.5, 0.0});
  FitResult g = fit_power_law(flat);
  CHECK(g.slope == doctest::Approx(0.0));

  CHECK_THROWS_AS(fit_power_law({{1, 1, 0}, {2, 4, 0}}), DegenerateStatistics);
  CHECK_THROWS_AS(fit_power_law({{1, 1, 0}, {2, 0.0, 0}, {4, 2, 0}}), DegenerateStatistics);
}

TEST_CASE("fit CI covers the true exponent on synthetic noisy data") {
  SplitMix64 rng(4242);
  int covered = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<FitPoint> pts;
    for (double n : {4.0, 8.0, 16.0, 32.0, 64.0}) {
      double rel = 0.03;
      // lognormal-ish noise via sum of uniforms
      double z = 0;
      for (int i = 0; i < 12; ++i) z += rng.uniform();
      z -= 6.0;  // approximately standard normal
      double y = std::pow(n, 1.5) * std::exp(rel * z);
      pts.push_back({n, y, y * rel});
    }
    FitResult f = fit_power_law(pts);
    if (f.ci_lo <= 1.5 && 1.5 <= f.ci_hi) ++covered;
  }
  CHECK(covered >= 93);
}

TEST_CASE("delta-method ratio SE is within 10% of a bootstrap") {
  SplitMix64 rng(77);
  const size_t m = 400;
  std::vector<double> num(m), den(m);
  for (size_t i = 0; i < m; ++i) {
    double base = 10.0 + 5.0 * rng.uniform();
    den[i] = base + rng.uniform();
    num[i] = 0.5 * base + rng.uniform();  // correlated pair
  }
  EstimateRecord delta = ratio_estimate("ratio", 0, num, den, m);

  // bootstrap the ratio of means
  const int B = 2000;
  std::vector<double> boots(B);
  for (int b = 0; b < B; ++b) {
    double sn = 0, sd = 0;
    for (size_t i = 0; i < m; ++i) {
      size_t j = size_t(rng.next() % m);
      sn += num[j];
      sd += den[j];
    }
    boots[size_t(b)] = sn / sd;
  }
  double mean = 0;
  for (double x : boots) mean += x;
  mean /= B;
  double var = 0;
  for (double x : boots) var += (x - mean) * (x - mean);
  double boot_se = std::sqrt(var / (B - 1));
  CHECK(std::abs(delta.se - boot_se) <= 0.10 * boot_se);
}

TEST_CASE("estimate errors") {
  CHECK_THROWS_AS(make_estimate("none", 0, {}, 0), DegenerateStatistics);
  CHECK_THROWS_AS(ratio_estimate("bad", 0, {1.0}, {0.0}, 1), DegenerateStatistics);
}
