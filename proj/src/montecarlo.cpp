#include "perc/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "perc/arms.hpp"
#include "perc/crossings.hpp"
#include "perc/parallel.hpp"
#include "perc/shortcuts.hpp"

namespace perc {

void ExperimentSpec::validate() const {
  if (n_list.empty()) throw std::invalid_argument("spec: empty n list");
  for (int n : n_list)
    if (n < 1) throw std::invalid_argument("spec: n values must be >= 1");
  for (size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1])
      throw std::invalid_argument("spec: n list must be strictly increasing");
  if (samples < 1) throw std::invalid_argument("spec: samples must be >= 1");
  if (p < 0 || p > 1) throw std::invalid_argument("spec: p must lie in [0,1]");
}

std::string ExperimentSpec::kind_name() const {
  switch (kind) {
    case Kind::Sample: return "sample";
    case Kind::Crossing: return "crossing";
    case Kind::Ratio: return "ratio";
    case Kind::Pi3Scaling: return "pi3";
    case Kind::LowestVolume: return "volume";
    case Kind::ShortcutAudit: return "shortcuts";
    case Kind::CircuitStack: return "circuits";
  }
  return "unknown";
}

namespace {

// per-n seed stream, decorrelated across experiments
std::uint64_t stream_seed(const ExperimentSpec& spec, int n) {
  return mix64(spec.master_seed ^ mix64(std::uint64_t(n) * 0x9E3779B97F4A7C15ULL +
                                        std::uint64_t(spec.kind)));
}

}  // namespace

ConditionedRun run_conditioned(const BoxGeometry& geom, double p, std::uint64_t seed,
                               long long quota, int workers,
                               const std::function<bool(const Config&)>& accept,
                               const std::function<std::vector<double>(const Config&)>& payload,
                               long long attempt_cap) {
  if (attempt_cap <= 0) attempt_cap = quota * 1000 + 1000;
  ConditionedRun out;
  const int w = resolve_workers(workers);
  const long long wave = std::max<long long>(64 * w, 256);
  long long next = 0;
  while ((long long)out.rows.size() < quota) {
    if (next >= attempt_cap)
      throw InsufficientConditioningMass("run_conditioned: conditioning event too rare within budget");
    long long count = std::min(wave, attempt_cap - next);
    const long long base = next;
    std::function<std::optional<std::vector<double>>(long long)> one =
        [&](long long i) -> std::optional<std::vector<double>> {
      Config c = sample_config(geom, p, sample_seed(seed, std::uint64_t(base + i)));
      if (!accept(c)) return std::nullopt;
      return payload(c);
    };
    auto results = parallel_map_indices<std::optional<std::vector<double>>>(count, workers, one);
    for (long long i = 0; i < count && (long long)out.rows.size() < quota; ++i) {
      if (results[size_t(i)]) {
        out.rows.push_back(std::move(*results[size_t(i)]));
        out.attempts = base + i + 1;
      }
    }
    next += count;
  }
  return out;
}

namespace {

struct CrossingSamples {
  std::vector<double> S, L;
  long long attempts = 0;
};

CrossingSamples conditioned_crossings(const ExperimentSpec& spec, int n) {
  BoxGeometry g(n);
  auto run = run_conditioned(
      g, spec.p, stream_seed(spec, n), spec.samples, spec.workers,
      [](const Config& c) { return has_horizontal_crossing(c); },
      [](const Config& c) -> std::vector<double> {
        LatticePath low = lowest_crossing(c);
        LatticePath sh = shortest_crossing(c);
        if (!(sh.length() <= low.length()) || sh.length() < 2 * c.geom.n)
          throw std::logic_error("order invariant violated: 2n <= S_n <= L_n");
        return {double(sh.length()), double(low.length())};
      });
  CrossingSamples out;
  out.attempts = run.attempts;
  for (auto& row : run.rows) {
    out.S.push_back(row[0]);
    out.L.push_back(row[1]);
  }
  return out;
}

}  // namespace

RatioResult run_ratio_experiment(const ExperimentSpec& spec) {
  spec.validate();
  RatioResult res;
  std::vector<FitPoint> ratio_pts, chem_pts, lowest_pts;
  for (int n : spec.n_list) {
    CrossingSamples s = conditioned_crossings(spec, n);
    RatioRow row;
    row.n = n;
    row.chem = make_estimate("chem_distance", n, s.S, s.attempts);
    row.lowest = make_estimate("lowest_volume", n, s.L, s.attempts);
    row.ratio = ratio_estimate("chem_over_lowest", n, s.S, s.L, s.attempts);
    ratio_pts.push_back({double(n), row.ratio.mean, row.ratio.se});
    chem_pts.push_back({double(n), row.chem.mean, row.chem.se});
    lowest_pts.push_back({double(n), row.lowest.mean, row.lowest.se});
    res.rows.push_back(row);
  }
  res.ratio_fit = fit_power_law(ratio_pts);
  res.chem_fit = fit_power_law(chem_pts);
  res.lowest_fit = fit_power_law(lowest_pts);
  return res;
}

Pi3Result run_pi3_scaling(const ExperimentSpec& spec) {
  spec.validate();
  Pi3Result res;
  std::vector<FitPoint> pts;
  for (int n : spec.n_list) {
    Pi3Row row;
    row.n = n;
    row.pi3 = estimate_pi3(n, spec.samples, stream_seed(spec, n), spec.p, spec.workers);
    res.rows.push_back(row);
    pts.push_back({double(n), row.pi3.mean, row.pi3.se});
  }
  // doubling table pi3(2n)/pi3(n)
  for (size_t i = 0; i < res.rows.size(); ++i) {
    for (size_t j = 0; j < i; ++j) {
      if (res.rows[j].n * 2 != res.rows[i].n) continue;
      double a = res.rows[i].pi3.mean, b = res.rows[j].pi3.mean;
      if (b <= 0 || a <= 0) continue;
      double r = a / b;
      double se = r * std::sqrt(std::pow(res.rows[i].pi3.se / a, 2) +
                                std::pow(res.rows[j].pi3.se / b, 2));
      res.rows[i].doubling_ratio = r;
      res.rows[i].doubling_ratio_se = se;
    }
  }
  res.fit = fit_power_law(pts);  // throws DegenerateStatistics on zero estimates
  return res;
}

VolumeResult run_lowest_volume(const ExperimentSpec& spec) {
  spec.validate();
  VolumeResult res;
  for (int n : spec.n_list) {
    CrossingSamples s = conditioned_crossings(spec, n);
    VolumeRow row;
    row.n = n;
    row.lowest = make_estimate("lowest_volume", n, s.L, s.attempts);
    row.pi3 = estimate_pi3(n, spec.samples, stream_seed(spec, n) ^ 0x5bf03635ULL, spec.p,
                           spec.workers);
    if (row.pi3.mean <= 0)
      throw DegenerateStatistics("run_lowest_volume: degenerate pi3 estimate (zero)");
    double scale = double(n) * double(n) * row.pi3.mean;
    row.normalized = row.lowest;
    row.normalized.name = "lowest_normalized";
    row.normalized.mean = row.lowest.mean / scale;
    // first-order error propagation across the independent pi3 factor
    double rel = std::sqrt(std::pow(row.lowest.se / row.lowest.mean, 2) +
                           std::pow(row.pi3.se / row.pi3.mean, 2));
    row.normalized.se = row.normalized.mean * rel;
    row.normalized.ci_lo = row.normalized.mean - 1.96 * row.normalized.se;
    row.normalized.ci_hi = row.normalized.mean + 1.96 * row.normalized.se;
    res.rows.push_back(row);
  }
  return res;
}

EstimateRecord run_uregion_volume(int k, long long samples, std::uint64_t master_seed,
                                  int workers) {
  int n = 3 * (1 << k);
  BoxGeometry g(n);
  URegion u = u_region(k);
  std::vector<double> lens;
  long long attempts = 0;
  // rejection over the inner event; payload is the outermost arc length
  for (long long i = 0; i < samples; ++i) {
    Config c = sample_config(g, 0.5, sample_seed(master_seed, std::uint64_t(i)));
    attempts = i + 1;
    auto ek = detect_Ek_prime_inner(c, k);
    if (!ek) continue;
    LatticePath arc = outermost_arc(c, u, ek->star1, ek->star2);
    lens.push_back(double(arc.length()));
  }
  (void)workers;
  if (lens.empty())
    throw InsufficientConditioningMass("run_uregion_volume: inner event never observed");
  EstimateRecord rec = make_estimate("uregion_arc_volume", n, lens, attempts);
  return rec;
}

ShortcutAuditResult run_shortcut_audit(const ExperimentSpec& spec) {
  spec.validate();
  ShortcutAuditResult res;
  for (int n : spec.n_list) {
    BoxGeometry g(n);
    int kmax = 1;
    while ((3LL << (kmax + 1)) <= 2LL * n / 3) ++kmax;
    ShortcutAuditRow row;
    row.n = n;
    std::vector<double> sig_ratio_num, sig_ratio_den, chosen_counts, candidate_counts;
    long long reval_fail = 0, nest_fail = 0, len_fail = 0;
    auto run = run_conditioned(
        g, spec.p, stream_seed(spec, n), spec.samples, spec.workers,
        [](const Config& c) { return has_horizontal_crossing(c); },
        [&](const Config& c) -> std::vector<double> {
          LatticePath host = lowest_crossing(c);
          HostContext ctx(c, host);
          std::vector<std::pair<int, std::vector<ShortcutRecord>>> families;
          std::vector<ShortcutRecord> all;
          for (int k = kmax; k >= 1; --k) {
            auto fam = find_all_shortcuts(ctx, spec.kappa, k);
            for (const auto& r : fam) all.push_back(r);
            families.push_back({k, std::move(fam)});
          }
          long long bad_reval = 0;
          for (const auto& r : all)
            if (!revalidate_shortcut(ctx, r, spec.kappa)) ++bad_reval;
          long long bad_nest = verify_nested_or_disjoint(all, host) ? 0 : 1;
          SelectionPlan plan = select_maximal(families, host);
          LatticePath sigma = build_sigma(host, plan);
          long long expect = host.length() - plan.total_detoured();
          for (const auto& r : plan.chosen) expect += r.r.length();
          long long bad_len = sigma.length() == expect ? 0 : 1;
          return {double(sigma.length()), double(host.length()), double(plan.chosen.size()),
                  double(all.size()), double(bad_reval), double(bad_nest), double(bad_len)};
        });
    for (auto& r : run.rows) {
      sig_ratio_num.push_back(r[0]);
      sig_ratio_den.push_back(r[1]);
      chosen_counts.push_back(r[2]);
      candidate_counts.push_back(r[3]);
      reval_fail += (long long)r[4];
      nest_fail += (long long)r[5];
      len_fail += (long long)r[6];
    }
    row.sigma_over_lowest = ratio_estimate("sigma_over_lowest", n, sig_ratio_num, sig_ratio_den,
                                           run.attempts);
    row.shortcuts_chosen = make_estimate("shortcuts_chosen", n, chosen_counts, run.attempts);
    row.candidates_found = make_estimate("shortcut_candidates", n, candidate_counts, run.attempts);
    row.revalidation_failures = reval_fail;
    row.nesting_violations = nest_fail;
    row.length_identity_violations = len_fail;
    res.rows.push_back(row);
  }
  return res;
}

CircuitStackResult run_circuit_stack(const ExperimentSpec& spec) {
  spec.validate();
  CircuitStackResult res;
  const int n = spec.n_list.back();
  BoxGeometry g(n);
  const int N = spec.circuit_N;
  int levels = 0;
  while ((1LL << ((levels + 1) * N)) <= n) ++levels;
  if (levels < 1) throw DegenerateStatistics("run_circuit_stack: box too small for one annulus");
  bool full_block = levels >= 10;
  std::function<std::vector<double>(long long)> one = [&](long long i) -> std::vector<double> {
    Config c = sample_config(g, spec.p, sample_seed(stream_seed(spec, n), std::uint64_t(i)));
    std::vector<double> row;
    for (int m = 0; m < levels; ++m) {
      int inner = int(1LL << (m * N));
      int outer = int(1LL << ((m + 1) * N));
      row.push_back(annulus_open_crossings_at_most(c, inner, outer, 2) ? 1.0 : 0.0);
      row.push_back(annulus_closed_dual_crossings_at_most(c, inner, outer, 1) ? 1.0 : 0.0);
    }
    if (full_block) {
      bool hat = row[2 * 0 + 1] > 0.5;  // D_0
      for (int i2 : {1, 3, 4, 6, 8, 9}) hat = hat && row[2 * i2] > 0.5;
      row.push_back(hat ? 1.0 : 0.0);
    }
    return row;
  };
  auto rows = parallel_map_indices<std::vector<double>>(spec.samples, spec.workers, one);
  for (int m = 0; m < levels; ++m) {
    std::vector<double> cvals, dvals;
    for (auto& r : rows) {
      cvals.push_back(r[size_t(2 * m)]);
      dvals.push_back(r[size_t(2 * m + 1)]);
    }
    CircuitStackRow out;
    out.index = m;
    out.freq_C = make_estimate("circuit_C", m, cvals, spec.samples);
    out.freq_D = make_estimate("circuit_D", m, dvals, spec.samples);
    res.rows.push_back(out);
  }
  if (full_block) {
    std::vector<double> hvals;
    for (auto& r : rows) hvals.push_back(r.back());
    res.freq_hatC0 = make_estimate("circuit_hatC0", 0, hvals, spec.samples);
  }
  return res;
}

}  // namespace perc
