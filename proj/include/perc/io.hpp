#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "perc/montecarlo.hpp"
#include "perc/stats.hpp"

namespace perc {

/// Fixed 6 significant digits, locale-independent (CSV cells).
std::string format_sig6(double v);

/// write-temp-then-rename
void atomic_write(const std::string& path, const std::string& content);

std::uint64_t fnv1a64(const std::string& bytes);
std::string fnv1a64_hex(const std::string& bytes);

/// CSV schema: experiment,n,samples,attempts,mean,se,ci_lo,ci_hi
std::string csv_render(const std::vector<EstimateRecord>& rows);
void write_csv(const std::string& path, const std::vector<EstimateRecord>& rows);

struct OutputDigest {
  std::string path;
  std::uint64_t bytes = 0;
  std::string digest;  // fnv1a64 of file content
};

struct RunManifest {
  std::string tool_version;
  std::string command;
  ExperimentSpec spec;
  std::string started_utc;
  std::string finished_utc;
  long long total_attempts = 0;
  std::vector<OutputDigest> outputs;
};

std::string manifest_render(const RunManifest& m);
void write_manifest(const std::string& path, const RunManifest& m);
RunManifest load_manifest(const std::string& path);

std::string utc_now_iso8601();
std::string read_file(const std::string& path);

}  // namespace perc
