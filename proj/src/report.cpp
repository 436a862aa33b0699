#include "cosetgauge/report.hpp"

#include <cstdio>

namespace cosetgauge {

bool Report::pass() const {
  for (const CheckRecord& c : checks)
    if (!c.pass) return false;
  return true;
}

Json Report::body() const {
  Json checks_json = Json::array();
  for (const CheckRecord& c : checks) {
    Json j{{"name", c.name},
           {"samples", c.samples},
           {"max_residual", c.max_residual},
           {"mean_residual", c.mean_residual},
           {"tolerance", c.tolerance},
           {"pass", c.pass}};
    if (!c.extra.is_null()) j["detail"] = c.extra;
    checks_json.push_back(std::move(j));
  }
  return Json{{"command", command},
              {"scenario", scenario_name},
              {"scenario_hash", scenario_hash},
              {"seed", seed},
              {"checks", checks_json},
              {"errors", error_count},
              {"pass", pass()}};
}

Json Report::full() const { return Json{{"body", body()}, {"wall_time_ms", wall_time_ms}}; }

std::string Report::human_summary() const {
  std::string out;
  for (const CheckRecord& c : checks) {
    char line[256];
    std::snprintf(line, sizeof(line), "%s  %-34s  max %.3e  mean %.3e  tol %.1e  (%ld samples)\n",
                  c.pass ? "PASS" : "FAIL", c.name.c_str(), c.max_residual, c.mean_residual,
                  c.tolerance, c.samples);
    out += line;
  }
  if (error_count > 0) out += "sample errors: " + std::to_string(error_count) + "\n";
  out += pass() ? "RESULT pass\n" : "RESULT fail\n";
  return out;
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string to_hex(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace cosetgauge
