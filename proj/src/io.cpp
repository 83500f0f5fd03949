#include "perc/io.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "perc/version.hpp"

namespace perc {

std::string format_sig6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void atomic_write(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("atomic_write: cannot open " + tmp);
    out.write(content.data(), (std::streamsize)content.size());
    if (!out) throw std::runtime_error("atomic_write: short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("atomic_write: rename failed for " + path);
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fnv1a64_hex(const std::string& bytes) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)fnv1a64(bytes));
  return buf;
}

std::string csv_render(const std::vector<EstimateRecord>& rows) {
  std::ostringstream out;
  out << "experiment,n,samples,attempts,mean,se,ci_lo,ci_hi\n";
  for (const EstimateRecord& r : rows) {
    out << r.name << ',' << r.n << ',' << r.samples << ',' << r.attempts << ','
        << format_sig6(r.mean) << ',' << format_sig6(r.se) << ',' << format_sig6(r.ci_lo) << ','
        << format_sig6(r.ci_hi) << '\n';
  }
  return out.str();
}

void write_csv(const std::string& path, const std::vector<EstimateRecord>& rows) {
  atomic_write(path, csv_render(rows));
}

namespace {

nlohmann::json spec_to_json(const ExperimentSpec& s) {
  return nlohmann::json{{"kind", s.kind_name()},    {"n", s.n_list},
                        {"samples", s.samples},     {"seed", s.master_seed},
                        {"p", s.p},                 {"kappa", s.kappa},
                        {"epsilon", s.epsilon},     {"circuit_N", s.circuit_N},
                        {"workers", s.workers}};
}

ExperimentSpec spec_from_json(const nlohmann::json& j) {
  ExperimentSpec s;
  std::string kind = j.at("kind").get<std::string>();
  using K = ExperimentSpec::Kind;
  if (kind == "sample") s.kind = K::Sample;
  else if (kind == "crossing") s.kind = K::Crossing;
  else if (kind == "ratio") s.kind = K::Ratio;
  else if (kind == "pi3") s.kind = K::Pi3Scaling;
  else if (kind == "volume") s.kind = K::LowestVolume;
  else if (kind == "shortcuts") s.kind = K::ShortcutAudit;
  else if (kind == "circuits") s.kind = K::CircuitStack;
  else throw std::runtime_error("manifest: unknown experiment kind " + kind);
  s.n_list = j.at("n").get<std::vector<int>>();
  s.samples = j.at("samples").get<long long>();
  s.master_seed = j.at("seed").get<std::uint64_t>();
  s.p = j.at("p").get<double>();
  s.kappa = j.at("kappa").get<double>();
  s.epsilon = j.at("epsilon").get<double>();
  s.circuit_N = j.value("circuit_N", 1);
  s.workers = j.value("workers", 0);
  return s;
}

}  // namespace

std::string manifest_render(const RunManifest& m) {
  nlohmann::json j;
  j["tool_version"] = m.tool_version;
  j["command"] = m.command;
  j["spec"] = spec_to_json(m.spec);
  j["started_utc"] = m.started_utc;
  j["finished_utc"] = m.finished_utc;
  j["total_attempts"] = m.total_attempts;
  j["outputs"] = nlohmann::json::array();
  for (const OutputDigest& o : m.outputs)
    j["outputs"].push_back({{"path", o.path}, {"bytes", o.bytes}, {"fnv1a64", o.digest}});
  return j.dump(2) + "\n";
}

void write_manifest(const std::string& path, const RunManifest& m) {
  atomic_write(path, manifest_render(m));
}

RunManifest load_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_manifest: cannot open " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  RunManifest m;
  m.tool_version = j.value("tool_version", std::string(kVersion));
  m.command = j.value("command", std::string());
  m.spec = spec_from_json(j.at("spec"));
  m.started_utc = j.value("started_utc", std::string());
  m.finished_utc = j.value("finished_utc", std::string());
  m.total_attempts = j.value("total_attempts", 0LL);
  if (j.contains("outputs"))
    for (const auto& o : j["outputs"])
      m.outputs.push_back({o.at("path").get<std::string>(), o.at("bytes").get<std::uint64_t>(),
                           o.at("fnv1a64").get<std::string>()});
  return m;
}

std::string utc_now_iso8601() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_file: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace perc
