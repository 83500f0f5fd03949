#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "perc/arms.hpp"
#include "perc/crossings.hpp"
#include "perc/io.hpp"
#include "perc/montecarlo.hpp"
#include "perc/parallel.hpp"
#include "perc/version.hpp"

namespace {

using perc::EstimateRecord;
using perc::ExperimentSpec;

EstimateRecord fit_row(const std::string& name, const perc::FitResult& fit) {
  EstimateRecord r;
  r.name = name;
  r.n = 0;
  r.mean = fit.slope;
  r.se = fit.slope_se;
  r.ci_lo = fit.ci_lo;
  r.ci_hi = fit.ci_hi;
  return r;
}

struct CommonOpts {
  std::vector<int> ns;
  long long samples = 1000;
  std::uint64_t seed = 1;
  double p = 0.5;
  double kappa = 0.5;
  double epsilon = 0.125;
  int workers = 0;
  int circuit_N = 1;
  int uregion_k = 0;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_n = true) {
  auto* n_opt = cmd->add_option("--n", o.ns, "box half-side lengths, comma separated")
                    ->delimiter(',')
                    ->check(CLI::PositiveNumber);
  if (needs_n) n_opt->required();
  cmd->add_option("--samples", o.samples, "samples per n")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--p", o.p, "edge density")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--kappa", o.kappa, "shortcut gain bound");
  cmd->add_option("--epsilon", o.epsilon, "scale-separation parameter");
  cmd->add_option("--workers", o.workers, "worker threads (0: hardware, env PERC_WORKERS)");
  cmd->add_option("--out", o.out, "output path prefix");
}

ExperimentSpec to_spec(const CommonOpts& o, ExperimentSpec::Kind kind) {
  ExperimentSpec s;
  s.kind = kind;
  s.n_list = o.ns;
  s.samples = o.samples;
  s.master_seed = o.seed;
  s.p = o.p;
  s.kappa = o.kappa;
  s.epsilon = o.epsilon;
  s.circuit_N = o.circuit_N;
  s.workers = o.workers;
  if (s.workers == 0) {
    if (const char* env = std::getenv("PERC_WORKERS")) s.workers = std::atoi(env);
  }
  return s;
}

struct RunOutput {
  std::vector<EstimateRecord> rows;
  long long attempts = 0;
};

RunOutput execute(const ExperimentSpec& spec, int uregion_k) {
  RunOutput out;
  using K = ExperimentSpec::Kind;
  switch (spec.kind) {
    case K::Sample: {
      for (int n : spec.n_list) {
        perc::BoxGeometry g(n);
        std::function<double(long long)> one = [&](long long i) {
          perc::Config c = perc::sample_config(
              g, spec.p, perc::sample_seed(spec.master_seed ^ std::uint64_t(n), std::uint64_t(i)));
          long long open = 0;
          for (auto s : c.states) open += s;
          return double(open) / double(c.states.size());
        };
        auto vals = perc::parallel_map_indices<double>(spec.samples, spec.workers, one);
        out.rows.push_back(perc::make_estimate("open_fraction", n, vals, spec.samples));
        out.attempts += spec.samples;
      }
      break;
    }
    case K::Crossing: {
      for (int n : spec.n_list) {
        perc::BoxGeometry g(n);
        long long center = g.edge_id(perc::Pt{0, 0}, perc::Orientation::Horizontal);
        std::uint64_t seed = perc::mix64(spec.master_seed ^ std::uint64_t(n));
        std::function<std::vector<double>(long long)> one = [&](long long i) {
          perc::Config c = perc::sample_config(g, spec.p, perc::sample_seed(seed, std::uint64_t(i)));
          if (!perc::has_horizontal_crossing(c)) return std::vector<double>{0};
          perc::LatticePath low = perc::lowest_crossing(c);
          perc::LatticePath sh = perc::shortest_crossing(c);
          double in_lowest = 0;
          for (long long e : low.edges)
            if (e == center) in_lowest = 1;
          return std::vector<double>{1, double(sh.length()), double(low.length()), in_lowest};
        };
        auto vals =
            perc::parallel_map_indices<std::vector<double>>(spec.samples, spec.workers, one);
        std::vector<double> h, S, L, member;
        for (auto& v : vals) {
          h.push_back(v[0]);
          if (v[0] > 0.5) {
            S.push_back(v[1]);
            L.push_back(v[2]);
            member.push_back(v[3]);
          }
        }
        out.rows.push_back(perc::make_estimate("crossing_prob", n, h, spec.samples));
        if (!S.empty()) {
          out.rows.push_back(perc::make_estimate("chem_distance", n, S, spec.samples));
          out.rows.push_back(perc::make_estimate("lowest_volume", n, L, spec.samples));
          out.rows.push_back(perc::make_estimate("center_in_lowest", n, member, spec.samples));
        }
        out.attempts += spec.samples;
      }
      break;
    }
    case K::Ratio: {
      perc::RatioResult r = perc::run_ratio_experiment(spec);
      for (const auto& row : r.rows) {
        out.rows.push_back(row.chem);
        out.rows.push_back(row.lowest);
        out.rows.push_back(row.ratio);
        out.attempts += row.chem.attempts;
      }
      out.rows.push_back(fit_row("fit_slope_ratio", r.ratio_fit));
      out.rows.push_back(fit_row("fit_slope_chem", r.chem_fit));
      out.rows.push_back(fit_row("fit_slope_lowest", r.lowest_fit));
      break;
    }
    case K::Pi3Scaling: {
      perc::Pi3Result r = perc::run_pi3_scaling(spec);
      for (const auto& row : r.rows) {
        out.rows.push_back(row.pi3);
        out.attempts += row.pi3.attempts;
        if (row.doubling_ratio) {
          EstimateRecord d;
          d.name = "pi3_doubling_ratio";
          d.n = row.n;
          d.samples = row.pi3.samples;
          d.attempts = row.pi3.attempts;
          d.mean = *row.doubling_ratio;
          d.se = *row.doubling_ratio_se;
          d.ci_lo = d.mean - 1.96 * d.se;
          d.ci_hi = d.mean + 1.96 * d.se;
          out.rows.push_back(d);
        }
      }
      out.rows.push_back(fit_row("fit_slope_pi3", r.fit));
      break;
    }
    case K::LowestVolume: {
      perc::VolumeResult r = perc::run_lowest_volume(spec);
      for (const auto& row : r.rows) {
        out.rows.push_back(row.lowest);
        out.rows.push_back(row.pi3);
        out.rows.push_back(row.normalized);
        out.attempts += row.lowest.attempts;
      }
      if (uregion_k > 0)
        out.rows.push_back(
            perc::run_uregion_volume(uregion_k, spec.samples, spec.master_seed, spec.workers));
      break;
    }
    case K::ShortcutAudit: {
      perc::ShortcutAuditResult r = perc::run_shortcut_audit(spec);
      for (const auto& row : r.rows) {
        out.rows.push_back(row.sigma_over_lowest);
        out.rows.push_back(row.shortcuts_chosen);
        out.rows.push_back(row.candidates_found);
        EstimateRecord f;
        f.name = "shortcut_audit_failures";
        f.n = row.n;
        f.samples = row.sigma_over_lowest.samples;
        f.attempts = row.sigma_over_lowest.attempts;
        f.mean = double(row.revalidation_failures + row.nesting_violations +
                        row.length_identity_violations);
        out.rows.push_back(f);
        out.attempts += row.sigma_over_lowest.attempts;
      }
      break;
    }
    case K::CircuitStack: {
      perc::CircuitStackResult r = perc::run_circuit_stack(spec);
      for (const auto& row : r.rows) {
        out.rows.push_back(row.freq_C);
        out.rows.push_back(row.freq_D);
      }
      if (!r.freq_hatC0.name.empty()) out.rows.push_back(r.freq_hatC0);
      out.attempts += spec.samples;
      break;
    }
  }
  return out;
}

int run_and_emit(const ExperimentSpec& spec, const std::string& out_prefix,
                 const std::string& command, int uregion_k) {
  perc::RunManifest manifest;
  manifest.tool_version = perc::kVersion;
  manifest.command = command;
  manifest.spec = spec;
  manifest.started_utc = perc::utc_now_iso8601();
  RunOutput result = execute(spec, uregion_k);
  manifest.finished_utc = perc::utc_now_iso8601();
  manifest.total_attempts = result.attempts;

  std::string csv_path = out_prefix + ".csv";
  perc::write_csv(csv_path, result.rows);
  std::string content = perc::read_file(csv_path);
  manifest.outputs.push_back(
      {csv_path, (std::uint64_t)content.size(), perc::fnv1a64_hex(content)});
  perc::write_manifest(out_prefix + ".manifest.json", manifest);
  std::cout << csv_path << "\n" << out_prefix + ".manifest.json" << "\n";
  return 0;
}

int run_report(const std::string& manifest_path) {
  perc::RunManifest m = perc::load_manifest(manifest_path);
  RunOutput result = execute(m.spec, 0);
  bool all_ok = true;
  for (const perc::OutputDigest& o : m.outputs) {
    std::string rendered = perc::csv_render(result.rows);
    std::string digest = perc::fnv1a64_hex(rendered);
    bool ok = digest == o.digest && rendered.size() == o.bytes;
    all_ok = all_ok && ok;
    std::cout << (ok ? "MATCH  " : "DIFFER ") << o.path << " fnv1a64=" << digest << "\n";
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"critical bond percolation crossing-geometry laboratory"};
  app.set_version_flag("--version", perc::kVersion);
  app.require_subcommand(1);

  std::string command;
  for (int i = 0; i < argc; ++i) {
    if (i) command += ' ';
    command += argv[i];
  }

  struct Sub {
    CLI::App* cmd;
    CommonOpts opts;
    ExperimentSpec::Kind kind;
  };
  std::vector<Sub> subs;
  subs.reserve(16);  // option pointers bind into the elements
  auto add = [&](const std::string& name, const std::string& desc, ExperimentSpec::Kind kind,
                 bool needs_n = true) {
    subs.push_back({app.add_subcommand(name, desc), {}, kind});
    add_common(subs.back().cmd, subs.back().opts, needs_n);
    return subs.back().cmd;
  };
  add("sample", "draw configurations and report the open-edge fraction",
      ExperimentSpec::Kind::Sample);
  add("crossing", "crossing probability, chemical distance and lowest-crossing statistics",
      ExperimentSpec::Kind::Crossing);
  add("pi3", "three-arm probability scaling", ExperimentSpec::Kind::Pi3Scaling);
  add("ratio", "E[S_n|H_n] / E[L_n|H_n] campaign with power-law fit",
      ExperimentSpec::Kind::Ratio);
  auto* vol = add("volume", "lowest-crossing volume against n^2 pi3(n)",
                  ExperimentSpec::Kind::LowestVolume);
  vol->add_option("--uregion-k", subs[4].opts.uregion_k,
                  "also estimate the outermost-arc volume in U(k)");
  add("shortcuts", "detour search, maximal selection and sigma assembly audit",
      ExperimentSpec::Kind::ShortcutAudit);
  auto* circ = add("circuits", "defected-circuit events in dyadic annuli",
                   ExperimentSpec::Kind::CircuitStack);
  circ->add_option("--granularity", subs[6].opts.circuit_N, "annulus exponent step N")
      ->check(CLI::PositiveNumber);

  auto* report = app.add_subcommand("report", "re-run a manifest and verify output digests");
  std::string manifest_path;
  report->add_option("--manifest", manifest_path, "manifest to reproduce")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (report->parsed()) return run_report(manifest_path);
    for (Sub& s : subs) {
      if (!s.cmd->parsed()) continue;
      ExperimentSpec spec = to_spec(s.opts, s.kind);
      std::string prefix = s.opts.out.empty() ? spec.kind_name() + "_run" : s.opts.out;
      return run_and_emit(spec, prefix, command, s.opts.uregion_k);
    }
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const perc::DegenerateStatistics& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
