#include "cosetgauge/scenario.hpp"

#include <cmath>
#include <fstream>
#include <random>

#include "cosetgauge/builtins.hpp"

namespace cosetgauge {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw ValidationError(what); }

std::pair<int, int> parse_key_pair(const std::string& key) {
  auto comma = key.find(',');
  if (comma == std::string::npos) invalid("coefficient key '" + key + "' is not of the form \"i,j\"");
  try {
    int a = std::stoi(key.substr(0, comma));
    int b = std::stoi(key.substr(comma + 1));
    return {a, b};
  } catch (const std::exception&) {
    invalid("coefficient key '" + key + "' is not a pair of integers");
  }
}

FieldExpr parse_field(const std::string& text, const std::string& where, int max_x, int max_s) {
  FieldExpr e;
  try {
    e = FieldExpr::parse(text);
  } catch (const Error& err) {
    invalid(where + ": " + err.what());
  }
  if (e.max_index(VarKind::X) > max_x)
    invalid(where + ": uses x" + std::to_string(e.max_index(VarKind::X)) + " but base dimension is " +
            std::to_string(max_x));
  if (e.max_index(VarKind::Sigma) > max_s)
    invalid(where + ": uses s" + std::to_string(e.max_index(VarKind::Sigma)) +
            (max_s == 0 ? " but this field depends on x only" : " but the fibre dimension is " +
            std::to_string(max_s)));
  return e;
}

/// Coefficient map {"i,j": "expr"} into a grid; absent entries are zero.
ExprGrid parse_grid(const Json& obj, const std::string& where, int rows, int cols, int max_x,
                    int max_s, bool rows_are_h = false,
                    const std::vector<int>* h_indices = nullptr) {
  ExprGrid grid(rows, cols);
  if (obj.is_null()) return grid;
  if (!obj.is_object()) invalid(where + " must be an object of \"i,j\" keys");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    auto [i, j] = parse_key_pair(it.key());
    int row = i - 1;
    if (rows_are_h) {
      // row index is the 1-based full-algebra index of an h generator
      row = -1;
      for (std::size_t ai = 0; ai < h_indices->size(); ++ai)
        if ((*h_indices)[ai] == i - 1) row = static_cast<int>(ai);
      if (row < 0) invalid(where + ": index " + std::to_string(i) + " is not an h generator");
    }
    if (row < 0 || row >= rows || j < 1 || j > cols)
      invalid(where + ": key \"" + it.key() + "\" out of range");
    if (!it.value().is_string()) invalid(where + ": value for \"" + it.key() + "\" must be a string");
    grid.at(row, j - 1) = parse_field(it.value().get<std::string>(), where + "[" + it.key() + "]",
                                      max_x, max_s);
  }
  return grid;
}

std::vector<FieldExpr> parse_component_map(const Json& obj, const std::string& where, int count,
                                           int max_x) {
  std::vector<FieldExpr> out(count);
  if (obj.is_null()) return out;
  if (!obj.is_object()) invalid(where + " must be an object of component keys");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    int i = 0;
    try {
      i = std::stoi(it.key());
    } catch (const std::exception&) {
      invalid(where + ": component key '" + it.key() + "' is not an integer");
    }
    if (i < 1 || i > count) invalid(where + ": component " + it.key() + " out of range");
    if (!it.value().is_string()) invalid(where + ": component values must be strings");
    out[i - 1] = parse_field(it.value().get<std::string>(), where + "[" + it.key() + "]", max_x, 0);
  }
  return out;
}

Matrix parse_matrix(const Json& j, const std::string& where, int rows, int cols) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    invalid(where + " must be a " + std::to_string(rows) + "x" + std::to_string(cols) + " array");
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      invalid(where + " must be a " + std::to_string(rows) + "x" + std::to_string(cols) + " array");
    for (int c = 0; c < cols; ++c) m(r, c) = row[c].get<double>();
  }
  return m;
}

/// Box: either [lo, hi] for every component or a per-component list.
Matrix parse_box(const Json& j, const std::string& where, int dim, double lo_default,
                 double hi_default) {
  Matrix box(dim, 2);
  if (j.is_null()) {
    box.col(0).setConstant(lo_default);
    box.col(1).setConstant(hi_default);
    return box;
  }
  if (!j.is_array() || j.empty()) invalid(where + " must be [lo, hi] or a per-component list");
  if (j[0].is_number()) {
    if (j.size() != 2) invalid(where + " must be [lo, hi]");
    box.col(0).setConstant(j[0].get<double>());
    box.col(1).setConstant(j[1].get<double>());
  } else {
    if (static_cast<int>(j.size()) != dim) invalid(where + " must have one [lo, hi] per component");
    for (int i = 0; i < dim; ++i) {
      if (!j[i].is_array() || j[i].size() != 2) invalid(where + " entries must be [lo, hi]");
      box(i, 0) = j[i][0].get<double>();
      box(i, 1) = j[i][1].get<double>();
    }
  }
  for (int i = 0; i < dim; ++i)
    if (!(box(i, 0) <= box(i, 1))) invalid(where + ": empty interval");
  return box;
}

LieAlgebraData load_algebra(const Json& spec) {
  if (spec.is_string()) return builtin_algebra(spec.get<std::string>());
  if (!spec.is_object() || !spec.contains("matrices"))
    invalid("algebra must be a built-in name or an object with \"matrices\"");
  const Json& mats = spec["matrices"];
  if (!mats.is_array() || mats.empty()) invalid("algebra.matrices must be a non-empty array");
  std::vector<Matrix> matrices;
  int d = 0;
  for (const Json& flat : mats) {
    if (!flat.is_array()) invalid("each algebra matrix must be a flat row-major array");
    if (d == 0) {
      d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(flat.size()))));
      if (d * d != static_cast<int>(flat.size())) invalid("algebra matrix length is not a square");
    }
    if (static_cast<int>(flat.size()) != d * d) invalid("algebra matrices have inconsistent sizes");
    Matrix m(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) m(r, c) = flat[r * d + c].get<double>();
    matrices.push_back(std::move(m));
  }
  std::vector<std::string> labels;
  if (spec.contains("labels"))
    for (const Json& l : spec["labels"]) labels.push_back(l.get<std::string>());
  try {
    return make_algebra(std::move(matrices), std::move(labels));
  } catch (const Error& e) {
    invalid(std::string("algebra validation failed: ") + e.what());
  }
}

}  // namespace

MatterLagrangian Scenario::make_lagrangian() const {
  if (lagrangian.kind == LagrangianSpec::Kind::RawKinetic) return raw_kinetic();
  return factored_quadratic(lagrangian.q, lagrangian.g);
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError("scenario '" + path + "': " + e.what());
  }
  std::string stem = path;
  if (auto slash = stem.find_last_of('/'); slash != std::string::npos) stem = stem.substr(slash + 1);
  if (auto dot = stem.find_last_of('.'); dot != std::string::npos) stem = stem.substr(0, dot);
  return load_scenario_json(doc, stem);
}

Scenario load_scenario_json(const Json& doc, const std::string& fallback_name) {
  if (!doc.is_object()) throw ParseError("scenario document must be a JSON object");
  Scenario s;
  s.raw = doc;
  s.hash = to_hex(fnv1a64(doc.dump()));  // nlohmann orders keys: canonical serialization
  s.name = doc.value("name", fallback_name);

  LieAlgebraData alg = load_algebra(doc.contains("algebra") ? doc["algebra"] : Json());
  const int n = alg.dim;

  if (!doc.contains("h_indices") || !doc["h_indices"].is_array() || doc["h_indices"].empty())
    invalid("h_indices must be a non-empty array of 1-based indices");
  std::vector<int> h_idx;
  for (const Json& v : doc["h_indices"]) {
    int i = v.get<int>();
    if (i < 1 || i > n) invalid("h_indices entry " + std::to_string(i) + " out of range");
    h_idx.push_back(i - 1);
  }
  ReductiveSplit split = make_split(n, h_idx);
  if (split.h_dim() + split.f_dim() != n || split.h_dim() != static_cast<int>(h_idx.size()))
    invalid("h_indices contains duplicates");

  s.split_report = check_reductive(alg, split, 1e-12);
  if (!s.split_report.reductive()) {
    const ReductiveViolation& v = s.split_report.violations.front();
    throw SplitValidationError("split is not reductive: " + describe(v, alg), s.split_report);
  }

  // representation
  if (!doc.contains("representation")) invalid("representation is required");
  const Json& rj = doc["representation"];
  HRepresentation rep;
  rep.fibre_dim = rj.value("fibre_dim", 0);
  if (rep.fibre_dim < 1) invalid("representation.fibre_dim must be positive");
  if (!rj.contains("generators") || !rj["generators"].is_array() ||
      static_cast<int>(rj["generators"].size()) != split.h_dim())
    invalid("representation.generators must list one k x k matrix per h generator");
  for (const Json& gj : rj["generators"])
    rep.generators.push_back(parse_matrix(gj, "representation generator", rep.fibre_dim, rep.fibre_dim));
  try {
    validate_representation(alg, split, rep, 1e-12);
  } catch (const Error& e) {
    invalid(std::string("representation validation failed: ") + e.what());
  }

  s.base_dim = doc.value("base_dim", 0);
  if (s.base_dim < 1) invalid("base_dim must be a positive integer");
  s.fibre_dim = rep.fibre_dim;

  double radius = doc.value("chart_radius", 0.0);
  s.chart = make_chart(std::move(alg), std::move(split), std::move(rep), radius);
  const int D = s.base_dim;
  const int F = s.chart.split.f_dim();
  const int k = s.fibre_dim;

  // coefficient fields
  ExprGrid ax_grid = parse_grid(doc.contains("connection_on_x") ? doc["connection_on_x"] : Json(),
                                "connection_on_x", n, D, D, 0);
  s.conn_x = connection_on_x_from_exprs(std::move(ax_grid));

  if (doc.contains("connection_on_sigma") && doc["connection_on_sigma"].is_string()) {
    if (doc["connection_on_sigma"].get<std::string>() != "canonical")
      invalid("connection_on_sigma: the only named connection is \"canonical\"");
    s.conn_sigma = canonical_connection(s.chart, D);
    s.conn_sigma_is_canonical = true;
  } else {
    const Json& cj = doc.contains("connection_on_sigma") ? doc["connection_on_sigma"] : Json();
    Json ax = cj.is_object() && cj.contains("A_x") ? cj["A_x"] : Json();
    Json as = cj.is_object() && cj.contains("A_s") ? cj["A_s"] : Json();
    ExprGrid gx = parse_grid(ax, "connection_on_sigma.A_x", s.chart.split.h_dim(), D, D, F, true,
                             &s.chart.split.h_indices);
    ExprGrid gs = parse_grid(as, "connection_on_sigma.A_s", s.chart.split.h_dim(), F, D, F, true,
                             &s.chart.split.h_indices);
    s.conn_sigma = connection_on_sigma_from_exprs(std::move(gx), std::move(gs), D);
  }

  s.higgs = higgs_from_exprs(
      parse_component_map(doc.contains("higgs") ? doc["higgs"] : Json(), "higgs", F, D), D);
  s.matter = section_from_exprs(
      parse_component_map(doc.contains("matter") ? doc["matter"] : Json(), "matter", k, D), D);

  // gauge family
  if (doc.contains("gauge_family")) {
    const Json& gf = doc["gauge_family"];
    std::string kind = gf.value("kind", "affine");
    if (kind == "constant") s.family.kind = GaugeFamily::Kind::Constant;
    else if (kind == "affine") s.family.kind = GaugeFamily::Kind::Affine;
    else invalid("gauge_family.kind must be \"constant\" or \"affine\"");
    s.family.scale = gf.value("scale", 1.0);
    if (s.family.scale <= 0) invalid("gauge_family.scale must be positive");
  }

  // lagrangian
  if (doc.contains("lagrangian")) {
    const Json& lj = doc["lagrangian"];
    std::string kind = lj.value("kind", "factored_quadratic");
    if (kind == "factored_quadratic") {
      s.lagrangian.kind = LagrangianSpec::Kind::FactoredQuadratic;
    } else if (kind == "raw_kinetic") {
      s.lagrangian.kind = LagrangianSpec::Kind::RawKinetic;
    } else {
      invalid("lagrangian.kind must be \"factored_quadratic\" or \"raw_kinetic\"");
    }
    s.lagrangian.q = lj.contains("q") ? parse_matrix(lj["q"], "lagrangian.q", k, k)
                                      : Matrix::Identity(k, k);
    s.lagrangian.g = lj.contains("g") ? parse_matrix(lj["g"], "lagrangian.g", k, k)
                                      : Matrix::Identity(k, k);
  } else {
    s.lagrangian.q = Matrix::Identity(k, k);
    s.lagrangian.g = Matrix::Identity(k, k);
  }
  if (s.lagrangian.kind == LagrangianSpec::Kind::FactoredQuadratic) {
    // the shipped factored family must be H-invariant: I_a^T M + M I_a = 0
    for (const Matrix& ia : s.chart.rep.generators) {
      if ((ia.transpose() * s.lagrangian.q + s.lagrangian.q * ia).cwiseAbs().maxCoeff() > 1e-12)
        invalid("lagrangian.q is not invariant under the fibre H-action");
      if ((ia.transpose() * s.lagrangian.g + s.lagrangian.g * ia).cwiseAbs().maxCoeff() > 1e-12)
        invalid("lagrangian.g is not invariant under the fibre H-action");
    }
  }

  // control thresholds (negative-control scenarios)
  if (doc.contains("control")) {
    const Json& cj = doc["control"];
    s.control.residual_floor = cj.value("residual_floor", 1e-3);
    s.control.min_xi_norm = cj.value("min_xi_norm", 0.1);
    s.control.required_fraction = cj.value("required_fraction", 0.9);
  }

  // sampling domain
  const Json& dom = doc.contains("domain") ? doc["domain"] : Json();
  auto get = [&](const char* key) { return dom.is_object() && dom.contains(key) ? dom[key] : Json(); };
  s.x_box = parse_box(get("x"), "domain.x", D, 0.0, 1.0);
  s.sigma_box = parse_box(get("sigma"), "domain.sigma", F, -0.4, 0.4);
  s.y_box = parse_box(get("y"), "domain.y", k, -1.0, 1.0);
  s.sigma_jet_box = parse_box(get("sigma_jet"), "domain.sigma_jet", F, -1.0, 1.0);
  s.y_jet_box = parse_box(get("y_jet"), "domain.y_jet", k, -1.0, 1.0);

  // tolerances
  if (doc.contains("tolerances")) {
    const Json& tj = doc["tolerances"];
    s.tol.algebra = tj.value("algebra", s.tol.algebra);
    s.tol.reductive = tj.value("reductive", s.tol.reductive);
    s.tol.theorem1 = tj.value("theorem1", s.tol.theorem1);
    s.tol.theorem4 = tj.value("theorem4", s.tol.theorem4);
    s.tol.invariance = tj.value("invariance", s.tol.invariance);
    s.tol.theorem6 = tj.value("theorem6", s.tol.theorem6);
    s.tol.affinity = tj.value("affinity", s.tol.affinity);
    s.tol.corruption_floor = tj.value("corruption_floor", s.tol.corruption_floor);
  }
  s.seed = doc.value("seed", 0ull);

  // the declared Higgs section must stay inside the chart over the x-domain
  {
    std::mt19937_64 eng(12345);
    auto unit = [&eng]() { return (eng() >> 11) * 0x1.0p-53; };
    for (int trial = 0; trial < 64; ++trial) {
      Vector x(D);
      for (int i = 0; i < D; ++i) {
        double t = (trial < (1 << D)) ? double((trial >> i) & 1) : unit();
        x[i] = s.x_box(i, 0) + t * (s.x_box(i, 1) - s.x_box(i, 0));
      }
      double norm = s.higgs.value(x).norm();
      if (norm >= s.chart.chart_radius)
        invalid("higgs section leaves the chart over the declared domain (||h|| = " +
                std::to_string(norm) + " at a sampled point)");
    }
  }
  return s;
}

}  // namespace cosetgauge
