#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "perc/config.hpp"
#include "perc/stats.hpp"

namespace perc {

struct ExperimentSpec {
  enum class Kind { Sample, Crossing, Ratio, Pi3Scaling, LowestVolume, ShortcutAudit, CircuitStack };
  Kind kind = Kind::Ratio;
  std::vector<int> n_list;          // strictly increasing
  long long samples = 1000;         // accepted samples per n (budget for unconditioned runs)
  std::uint64_t master_seed = 1;
  double p = 0.5;
  double kappa = 0.5;
  double epsilon = 0.125;
  int circuit_N = 1;
  int workers = 0;  // 0: hardware concurrency

  void validate() const;
  std::string kind_name() const;
};

/// Deterministic conditioned sampler: attempts are indexed, each attempt's
/// configuration depends only on (seed, attempt index), and the accepted set
/// is the first `quota` accepted attempts by index. Workers share nothing but
/// the index range, so any worker count gives bit-identical results.
/// The payload row is recorded per accepted sample.
struct ConditionedRun {
  std::vector<std::vector<double>> rows;  // per accepted sample
  long long attempts = 0;
};
ConditionedRun run_conditioned(const BoxGeometry& geom, double p, std::uint64_t seed,
                               long long quota, int workers,
                               const std::function<bool(const Config&)>& accept,
                               const std::function<std::vector<double>(const Config&)>& payload,
                               long long attempt_cap = 0);

struct RatioRow {
  int n = 0;
  EstimateRecord chem;    // E[S_n | H_n]
  EstimateRecord lowest;  // E[L_n | H_n]
  EstimateRecord ratio;   // delta-method SE
};
struct RatioResult {
  std::vector<RatioRow> rows;
  FitResult ratio_fit;      // log ratio vs log n
  FitResult chem_fit;       // log E[S|H] vs log n
  FitResult lowest_fit;     // log E[L|H] vs log n
};
RatioResult run_ratio_experiment(const ExperimentSpec& spec);

struct Pi3Row {
  int n = 0;
  EstimateRecord pi3;
  std::optional<double> doubling_ratio;  // pi3(n)/pi3(n/2) when n/2 in list
  std::optional<double> doubling_ratio_se;
};
struct Pi3Result {
  std::vector<Pi3Row> rows;
  FitResult fit;
};
Pi3Result run_pi3_scaling(const ExperimentSpec& spec);

struct VolumeRow {
  int n = 0;
  EstimateRecord lowest;      // E[L_n | H_n]
  EstimateRecord pi3;
  EstimateRecord normalized;  // E[L_n|H_n] / (n^2 pi3(n))
};
struct VolumeResult {
  std::vector<VolumeRow> rows;
};
VolumeResult run_lowest_volume(const ExperimentSpec& spec);

/// E[#outermost arc | inner event] at scale k by rejection over the inner
/// event detector (box size 3*2^k). Fails with InsufficientConditioningMass
/// when the event is never seen within the attempt budget.
EstimateRecord run_uregion_volume(int k, long long samples, std::uint64_t master_seed,
                                  int workers = 0);

struct ShortcutAuditRow {
  int n = 0;
  EstimateRecord sigma_over_lowest;  // #sigma / #l_n
  EstimateRecord shortcuts_chosen;
  EstimateRecord candidates_found;
  long long revalidation_failures = 0;
  long long nesting_violations = 0;
  long long length_identity_violations = 0;
};
struct ShortcutAuditResult {
  std::vector<ShortcutAuditRow> rows;
};
ShortcutAuditResult run_shortcut_audit(const ExperimentSpec& spec);

struct CircuitStackRow {
  int index = 0;  // annulus index m
  EstimateRecord freq_C;
  EstimateRecord freq_D;
};
struct CircuitStackResult {
  std::vector<CircuitStackRow> rows;
  EstimateRecord freq_hatC0;  // block 0, when the box allows it
};
CircuitStackResult run_circuit_stack(const ExperimentSpec& spec);

}  // namespace perc
