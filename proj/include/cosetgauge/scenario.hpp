#pragma once

// Scenario files: a single JSON document declaring the group data, the
// coefficient fields (as expression strings), the sampling domain, the
// Lagrangian and tolerances.  See README for the format and the shipped
// fixtures under scenarios/.

#include <cstdint>
#include <optional>
#include <string>

#include "cosetgauge/gauge.hpp"
#include "cosetgauge/report.hpp"

namespace cosetgauge {

/// Raised when the declared index split fails the reductive conditions; the
/// check-reductive command turns this into a failing report instead of an
/// I/O error.
struct SplitValidationError : ValidationError {
  SplitValidationError(const std::string& msg, ReductiveReport rep)
      : ValidationError(msg), report(std::move(rep)) {}
  ReductiveReport report;
};

struct GaugeFamily {
  enum class Kind { Constant, Affine };
  Kind kind = Kind::Affine;
  double scale = 1.0;
};

struct LagrangianSpec {
  enum class Kind { FactoredQuadratic, RawKinetic };
  Kind kind = Kind::FactoredQuadratic;
  Matrix q, g;  // fibre metrics (FactoredQuadratic)
};

struct ControlSpec {
  double residual_floor = 1e-3;
  double min_xi_norm = 0.1;
  double required_fraction = 0.9;
};

struct Tolerances {
  double algebra = 1e-12;
  double reductive = 1e-12;
  double theorem1 = 1e-5;
  double theorem4 = 1e-6;
  double invariance = 1e-5;
  double theorem6 = 1e-5;
  double affinity = 1e-9;
  double corruption_floor = 1e-2;
};

struct Scenario {
  std::string name;
  Json raw;                  // canonical (sorted-key) document
  std::string hash;          // FNV-1a of the canonical serialization
  ReductiveReport split_report;

  CosetChart chart;
  int base_dim = 0;   // D
  int fibre_dim = 0;  // k

  ConnectionOnX conn_x;
  ConnectionOnSigma conn_sigma;
  bool conn_sigma_is_canonical = false;
  HiggsSection higgs;
  VectorSection matter;

  GaugeFamily family;
  LagrangianSpec lagrangian;
  ControlSpec control;

  Matrix x_box, sigma_box, y_box, sigma_jet_box, y_jet_box;  // dim × 2 bounds

  Tolerances tol;
  std::uint64_t seed = 0;

  MatterLagrangian make_lagrangian() const;
};

/// Loads and fully validates a scenario; fills declared defaults.  Throws
/// ParseError (malformed file), ValidationError (failed invariant) or
/// SplitValidationError (non-reductive split).
Scenario load_scenario(const std::string& path);

/// Same, from an in-memory document (used by tests).
Scenario load_scenario_json(const Json& doc, const std::string& fallback_name = "inline");

}  // namespace cosetgauge
