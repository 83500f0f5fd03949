#include "perc/stats.hpp"

#include <cmath>

namespace perc {

namespace {

double sample_sd(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / double(v.size() - 1));
}

}  // namespace

EstimateRecord make_estimate(const std::string& name, int n, const std::vector<double>& values,
                             long long attempts) {
  if (values.empty()) throw DegenerateStatistics("estimate '" + name + "': no samples");
  double sum = 0;
  for (double x : values) sum += x;
  EstimateRecord r;
  r.name = name;
  r.n = n;
  r.samples = (long long)values.size();
  r.attempts = attempts;
  r.mean = sum / double(values.size());
  r.se = sample_sd(values, r.mean) / std::sqrt(double(values.size()));
  r.ci_lo = r.mean - 1.96 * r.se;
  r.ci_hi = r.mean + 1.96 * r.se;
  r.ci_valid = r.samples >= 30;
  return r;
}

EstimateRecord ratio_estimate(const std::string& name, int n, const std::vector<double>& num,
                              const std::vector<double>& den, long long attempts) {
  if (num.size() != den.size() || num.empty())
    throw DegenerateStatistics("ratio '" + name + "': mismatched samples");
  const double m = double(num.size());
  double mx = 0, my = 0;
  for (size_t i = 0; i < num.size(); ++i) {
    mx += num[i];
    my += den[i];
  }
  mx /= m;
  my /= m;
  if (my == 0) throw DegenerateStatistics("ratio '" + name + "': zero denominator mean");
  double vxx = 0, vyy = 0, vxy = 0;
  for (size_t i = 0; i < num.size(); ++i) {
    vxx += (num[i] - mx) * (num[i] - mx);
    vyy += (den[i] - my) * (den[i] - my);
    vxy += (num[i] - mx) * (den[i] - my);
  }
  double denom = m > 1 ? m - 1 : 1;
  vxx /= denom;
  vyy /= denom;
  vxy /= denom;
  const double r = mx / my;
  // delta method for the ratio of paired means
  double var = (vxx / (mx * mx) + vyy / (my * my) - 2 * vxy / (mx * my)) * r * r / m;
  EstimateRecord rec;
  rec.name = name;
  rec.n = n;
  rec.samples = (long long)num.size();
  rec.attempts = attempts;
  rec.mean = r;
  rec.se = var > 0 ? std::sqrt(var) : 0.0;
  rec.ci_lo = rec.mean - 1.96 * rec.se;
  rec.ci_hi = rec.mean + 1.96 * rec.se;
  rec.ci_valid = rec.samples >= 30;
  return rec;
}

FitResult fit_power_law(const std::vector<FitPoint>& points) {
  if (points.size() < 3)
    throw DegenerateStatistics("fit_power_law: need at least 3 points");
  for (const FitPoint& p : points)
    if (!(p.estimate > 0) || !(p.n > 0))
      throw DegenerateStatistics("fit_power_law: degenerate estimates (nonpositive)");

  const size_t m = points.size();
  std::vector<double> x(m), y(m), w(m);
  bool weighted = true;
  for (size_t i = 0; i < m; ++i) {
    x[i] = std::log(points[i].n);
    y[i] = std::log(points[i].estimate);
    double sigma = points[i].se > 0 ? points[i].se / points[i].estimate : 0.0;
    if (sigma <= 0) weighted = false;
    w[i] = sigma > 0 ? 1.0 / (sigma * sigma) : 1.0;
  }
  if (!weighted) std::fill(w.begin(), w.end(), 1.0);

  double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
  for (size_t i = 0; i < m; ++i) {
    sw += w[i];
    swx += w[i] * x[i];
    swy += w[i] * y[i];
    swxx += w[i] * x[i] * x[i];
    swxy += w[i] * x[i] * y[i];
  }
  const double det = sw * swxx - swx * swx;
  if (det == 0) throw DegenerateStatistics("fit_power_law: collinear degenerate abscissae");
  FitResult res;
  res.slope = (sw * swxy - swx * swy) / det;
  res.intercept = (swxx * swy - swx * swxy) / det;

  double chi2 = 0;
  res.residuals.resize(m);
  for (size_t i = 0; i < m; ++i) {
    double r = y[i] - (res.intercept + res.slope * x[i]);
    res.residuals[i] = r;
    chi2 += w[i] * r * r;
  }
  double var_slope = sw / det;
  if (weighted) {
    // inflate when the scatter exceeds the declared errors
    double red = chi2 / double(m - 2);
    if (red > 1) var_slope *= red;
  } else {
    var_slope *= chi2 / double(m - 2);
  }
  res.slope_se = std::sqrt(var_slope);
  res.ci_lo = res.slope - 1.96 * res.slope_se;
  res.ci_hi = res.slope + 1.96 * res.slope_se;
  return res;
}

}  // namespace perc
