#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "perc/crossings.hpp"
#include "perc/io.hpp"
#include "perc/montecarlo.hpp"

using namespace perc;

namespace {

ExperimentSpec base_spec(ExperimentSpec::Kind kind) {
  ExperimentSpec s;
  s.kind = kind;
  s.n_list = {4, 8, 16};
  s.samples = 150;
  s.master_seed = 7;
  return s;
}

}  // namespace

TEST_CASE("spec validation") {
  ExperimentSpec s = base_spec(ExperimentSpec::Kind::Ratio);
  CHECK_NOTHROW(s.validate());
  s.n_list = {8, 8};
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s.n_list = {};
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s.n_list = {4};
  s.samples = 0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("campaigns are bit-identical across worker counts") {
  for (int workers : {1, 3, 7}) {
    ExperimentSpec s = base_spec(ExperimentSpec::Kind::Ratio);
    s.workers = workers;
    static RatioResult reference;
    RatioResult r = run_ratio_experiment(s);
    if (workers == 1) {
      reference = r;
      continue;
    }
    REQUIRE(r.rows.size() == reference.rows.size());
    for (size_t i = 0; i < r.rows.size(); ++i) {
      CHECK(r.rows[i].chem.mean == reference.rows[i].chem.mean);
      CHECK(r.rows[i].chem.se == reference.rows[i].chem.se);
      CHECK(r.rows[i].lowest.mean == reference.rows[i].lowest.mean);
      CHECK(r.rows[i].ratio.mean == reference.rows[i].ratio.mean);
      CHECK(r.rows[i].chem.attempts == reference.rows[i].chem.attempts);
    }
    CHECK(r.ratio_fit.slope == reference.ratio_fit.slope);
  }
}

TEST_CASE("conditioning accounting matches the crossing frequency exactly") {
  BoxGeometry g(6);
  const std::uint64_t seed = 99;
  auto run = run_conditioned(
      g, 0.5, seed, 80, 3, [](const Config& c) { return has_horizontal_crossing(c); },
      [](const Config&) { return std::vector<double>{1.0}; });
  // replay the same stream: accepted samples within [0, attempts) must equal
  // the quota, and every acceptance decision must match the detector
  long long accepted = 0;
  for (long long i = 0; i < run.attempts; ++i) {
    Config c = sample_config(g, 0.5, sample_seed(seed, std::uint64_t(i)));
    if (has_horizontal_crossing(c)) ++accepted;
  }
  CHECK(accepted == 80);
  CHECK((long long)run.rows.size() == 80);
  // and the final attempt is an accepted one
  Config last = sample_config(g, 0.5, sample_seed(seed, std::uint64_t(run.attempts - 1)));
  CHECK(has_horizontal_crossing(last));
}

TEST_CASE("insufficient conditioning mass is an explicit failure") {
  BoxGeometry g(4);
  CHECK_THROWS_AS(run_conditioned(
                      g, 0.5, 1, 10, 1, [](const Config&) { return false; },
                      [](const Config&) { return std::vector<double>{}; }, 500),
                  InsufficientConditioningMass);
}

TEST_CASE("ratio experiment at p=1 gives ratio exactly one") {
  ExperimentSpec s = base_spec(ExperimentSpec::Kind::Ratio);
  s.p = 1.0;
  s.samples = 40;
  RatioResult r = run_ratio_experiment(s);
  for (const auto& row : r.rows) {
    CHECK(row.chem.mean == 2.0 * row.n);
    CHECK(row.lowest.mean == 2.0 * row.n);
    CHECK(row.ratio.mean == 1.0);
    CHECK(row.ratio.se == 0.0);
  }
  CHECK(r.ratio_fit.slope == doctest::Approx(0.0));
}

TEST_CASE("ratio experiment at n=1 matches full enumeration") {
  // exact conditional expectations over the 2^12 configurations
  BoxGeometry g(1);
  double sum_s = 0, sum_l = 0;
  long long crossings = 0;
  for (unsigned mask = 0; mask < 4096; ++mask) {
    Config c = sample_config(g, 0.0, 1);
    for (int e = 0; e < 12; ++e) c.states[size_t(e)] = (mask >> e) & 1;
    oracle::CrossingEnumeration ref(c);
    if (!ref.crossed) continue;
    ++crossings;
    sum_s += double(ref.shortest_len);
    sum_l += double(ref.lowest.size() - 1);
  }
  double exact_s = sum_s / double(crossings);
  double exact_l = sum_l / double(crossings);

  ExperimentSpec s = base_spec(ExperimentSpec::Kind::Ratio);
  s.n_list = {1, 2, 4};
  s.samples = 4000;
  RatioResult r = run_ratio_experiment(s);
  CHECK(std::abs(r.rows[0].chem.mean - exact_s) <= 3 * r.rows[0].chem.se);
  CHECK(std::abs(r.rows[0].lowest.mean - exact_l) <= 3 * r.rows[0].lowest.se);
}

TEST_CASE("pi3 scaling refuses degenerate estimates") {
  ExperimentSpec s = base_spec(ExperimentSpec::Kind::Pi3Scaling);
  s.p = 1.0;
  s.samples = 50;
  CHECK_THROWS_AS(run_pi3_scaling(s), DegenerateStatistics);
}

TEST_CASE("pi3 scaling produces a negative slope in a sane window") {
  ExperimentSpec s = base_spec(ExperimentSpec::Kind::Pi3Scaling);
  s.n_list = {2, 4, 8, 16};
  s.samples = 2500;
  Pi3Result r = run_pi3_scaling(s);
  CHECK(r.fit.slope < 0);
  CHECK(r.fit.slope > -2);
  for (const auto& row : r.rows)
    if (row.doubling_ratio) CHECK(*row.doubling_ratio > 0.5 - 2 * *row.doubling_ratio_se);
}

TEST_CASE("volume experiment refuses p=1 (zero pi3)") {
  ExperimentSpec s = base_spec(ExperimentSpec::Kind::LowestVolume);
  s.p = 1.0;
  s.samples = 40;
  CHECK_THROWS_AS(run_lowest_volume(s), DegenerateStatistics);
}

TEST_CASE("uregion volume estimator fails honestly on a tiny budget") {
  CHECK_THROWS_AS(run_uregion_volume(2, 50, 1), InsufficientConditioningMass);
}

TEST_CASE("shortcut audit runs clean on a small campaign") {
  ExperimentSpec s = base_spec(ExperimentSpec::Kind::ShortcutAudit);
  s.n_list = {16};
  s.samples = 30;
  s.kappa = 0.5;
  ShortcutAuditResult r = run_shortcut_audit(s);
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].revalidation_failures == 0);
  CHECK(r.rows[0].nesting_violations == 0);
  CHECK(r.rows[0].length_identity_violations == 0);
  CHECK(r.rows[0].sigma_over_lowest.mean <= 1.0);
  CHECK(r.rows[0].sigma_over_lowest.mean > 0.0);
}

TEST_CASE("circuit stack campaign frequencies are sane") {
  // ratio-2 annuli almost never carry a two-defect circuit at p = 1/2, which
  // is why the construction takes a large granularity; test at N = 2
  ExperimentSpec s = base_spec(ExperimentSpec::Kind::CircuitStack);
  s.n_list = {16};
  s.samples = 400;
  s.circuit_N = 2;
  CircuitStackResult r = run_circuit_stack(s);
  REQUIRE(r.rows.size() == 2);  // annuli 1..4 and 4..16
  for (const auto& row : r.rows) {
    CHECK(row.freq_C.mean > 0.02);
    CHECK(row.freq_C.mean < 0.9);
    CHECK(row.freq_D.mean > 0.005);
    CHECK(row.freq_D.mean < 0.9);
  }
}
