#pragma once

// Machine-readable check reports.  The report body is deterministic for a
// fixed (scenario, command, seed, samples); wall time lives outside the body
// so reruns are byte-identical.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace cosetgauge {

using Json = nlohmann::json;

struct CheckRecord {
  std::string name;
  long samples = 0;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  Json extra;  // optional structured details
};

struct Report {
  std::string command;
  std::string scenario_name;
  std::string scenario_hash;  // hex
  std::uint64_t seed = 0;
  std::vector<CheckRecord> checks;
  long error_count = 0;
  double wall_time_ms = 0.0;

  bool pass() const;
  Json body() const;            // deterministic part
  Json full() const;            // body + wall time
  std::string human_summary() const;
};

std::uint64_t fnv1a64(std::string_view data);
std::string to_hex(std::uint64_t v);

}  // namespace cosetgauge
