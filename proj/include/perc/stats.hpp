#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace perc {

/// Raised when an experiment cannot produce meaningful statistics (degenerate
/// estimates, too few fit points, ...). The CLI maps this to exit code 1.
struct DegenerateStatistics : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Conditioning event never observed within the sample budget.
struct InsufficientConditioningMass : DegenerateStatistics {
  using DegenerateStatistics::DegenerateStatistics;
};

/// Named Monte Carlo estimate. CI = mean +/- 1.96 SE, SE = sd/sqrt(samples).
struct EstimateRecord {
  std::string name;
  int n = 0;
  long long samples = 0;
  long long attempts = 0;
  double mean = 0;
  double se = 0;
  double ci_lo = 0;
  double ci_hi = 0;
  bool ci_valid = false;  // samples >= 30
};

EstimateRecord make_estimate(const std::string& name, int n, const std::vector<double>& values,
                             long long attempts);

/// Ratio of two paired sample means with a delta-method standard error
/// (includes the covariance term).
EstimateRecord ratio_estimate(const std::string& name, int n, const std::vector<double>& num,
                              const std::vector<double>& den, long long attempts);

struct FitPoint {
  double n = 0;
  double estimate = 0;
  double se = 0;
};

struct FitResult {
  double slope = 0;
  double intercept = 0;
  double slope_se = 0;
  double ci_lo = 0;
  double ci_hi = 0;
  std::vector<double> residuals;
};

/// Least squares of log(estimate) on log(n), weighted by the propagated
/// per-point errors se/estimate when available; the slope error is inflated
/// by sqrt(max(1, reduced chi^2)). Requires >= 3 points, all positive.
FitResult fit_power_law(const std::vector<FitPoint>& points);

}  // namespace perc
