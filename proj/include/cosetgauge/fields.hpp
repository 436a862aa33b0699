#pragma once

// Coefficient-field containers.  All are evaluator-backed so that derived
// objects (gauge-transformed connections, transported Higgs sections) share
// the same interfaces as expression-backed scenario data.

#include <functional>
#include <vector>

#include "cosetgauge/field_expr.hpp"
#include "cosetgauge/types.hpp"

namespace cosetgauge {

/// Dense grid of expressions with absent entries defaulting to the zero
/// expression.
struct ExprGrid {
  int rows = 0, cols = 0;
  std::vector<FieldExpr> entries;  // row-major

  ExprGrid() = default;
  ExprGrid(int r, int c) : rows(r), cols(c), entries(static_cast<std::size_t>(r) * c) {}
  FieldExpr& at(int r, int c) { return entries[static_cast<std::size_t>(r) * cols + c]; }
  const FieldExpr& at(int r, int c) const { return entries[static_cast<std::size_t>(r) * cols + c]; }

  Matrix eval(const EvalPoint& p) const {
    Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) m(r, c) = at(r, c).eval(p);
    return m;
  }
};

/// Principal connection on P -> X: coefficients a^p_lambda(x), n × D.
struct ConnectionOnX {
  int n = 0, dim_x = 0;
  std::function<Matrix(const Vector& x)> coefficients;

  Matrix eval(const Vector& x) const { return coefficients(x); }
};

ConnectionOnX connection_on_x_from_exprs(ExprGrid grid);
ConnectionOnX zero_connection_on_x(int n, int dim_x);

/// H-principal connection on P -> Sigma: A^a_lambda(x,sigma) and
/// A^a_m(x,sigma).
struct ConnectionOnSigma {
  int h_dim = 0, f_dim = 0, dim_x = 0;
  std::function<Matrix(const Vector& x, const Vector& sigma)> a_x;  // h_dim × D
  std::function<Matrix(const Vector& x, const Vector& sigma)> a_s;  // h_dim × f_dim
};

ConnectionOnSigma connection_on_sigma_from_exprs(ExprGrid a_x, ExprGrid a_s, int dim_x);

/// Higgs section h^m(x); evaluator-backed with optional expressions.
struct HiggsSection {
  int f_dim = 0, dim_x = 0;
  std::function<Vector(const Vector& x)> value;
  std::vector<FieldExpr> exprs;  // empty for derived sections
};

HiggsSection higgs_from_exprs(std::vector<FieldExpr> exprs, int dim_x);

/// Central-difference jet d_lambda h^m(x); matches diff_numeric semantics.
Matrix section_jet(const HiggsSection& h, const Vector& x, const FdOptions& opts = {});

/// Gauge parameter xi^p(x), valued in the full algebra.
struct GaugeParameter {
  int n = 0, dim_x = 0;
  std::function<Vector(const Vector& x)> value;
  std::vector<FieldExpr> exprs;
};

GaugeParameter gauge_parameter_from_exprs(std::vector<FieldExpr> exprs, int dim_x);

/// Point of the first jet manifold of Y -> X in adapted coordinates.
struct JetPointY {
  Vector x;          // D
  Vector sigma;      // F
  Vector y;          // k
  Matrix sigma_jet;  // F × D
  Matrix y_jet;      // k × D
};

/// Vector-valued section (used for matter sections y^i(x) in theorem checks).
struct VectorSection {
  int dim = 0, dim_x = 0;
  std::function<Vector(const Vector& x)> value;
  std::vector<FieldExpr> exprs;
};

VectorSection section_from_exprs(std::vector<FieldExpr> exprs, int dim_x);
Matrix section_jet(const VectorSection& s, const Vector& x, const FdOptions& opts = {});

}  // namespace cosetgauge
