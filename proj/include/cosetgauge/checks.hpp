#pragma once

// Theorem-check drivers shared by the CLI and the acceptance suite.  Every
// check is a pure function of (scenario, sample count, seed); reports are
// deterministic and worker-count independent.

#include <cstdint>
#include <optional>
#include <random>

#include "cosetgauge/expr_corpus.hpp"
#include "cosetgauge/reconstruction.hpp"
#include "cosetgauge/scenario.hpp"

namespace cosetgauge {

struct RunOptions {
  std::optional<long> samples;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<double> fd_step;
  bool richardson = false;
};

/// Deterministic sampling helper: a fixed 64-bit generator with an explicit
/// uniform mapping, so reports are reproducible across standard libraries.
struct Sampler {
  std::mt19937_64 eng;
  explicit Sampler(std::uint64_t seed) : eng(seed) {}
  double unit() { return (eng() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  Vector box(const Matrix& bounds) {
    Vector v(bounds.rows());
    for (Index i = 0; i < bounds.rows(); ++i) v[i] = uniform(bounds(i, 0), bounds(i, 1));
    return v;
  }
};

/// Random gauge parameter from the scenario's declared family.
GaugeParameter draw_gauge_parameter(const Scenario& s, Sampler& rng);

// per-command checks ----------------------------------------------------------

std::vector<CheckRecord> check_algebra(const Scenario& s);
CheckRecord check_reductive_record(const Scenario& s);
/// Failing record built from a SplitValidationError raised at load time.
CheckRecord check_reductive_record(const ReductiveReport& report, double tol);

CheckRecord check_theorem1(const Scenario& s, long samples, std::uint64_t seed,
                           const FdOptions& fd, double tol);
std::vector<CheckRecord> check_theorem4(const Scenario& s, long samples, std::uint64_t seed,
                                        const FdOptions& fd, double tol);
std::vector<CheckRecord> check_invariance(const Scenario& s, long samples, std::uint64_t seed,
                                          const FdOptions& fd, double tol, long* errors);
std::vector<CheckRecord> check_reconstruct(const Scenario& s, long samples, std::uint64_t seed,
                                           const FdOptions& fd, double tol);
CheckRecord check_parser(long samples, std::uint64_t seed);

struct CommandResult {
  Report report;
  int exit_code = 0;  // 0 pass, 1 check failure, 2 usage/input error
};

/// Dispatches a CLI command.  `scenario_path` may be empty for check-parser.
CommandResult run_command(const std::string& command, const std::string& scenario_path,
                          const RunOptions& opts);

}  // namespace cosetgauge
