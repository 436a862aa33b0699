#pragma once

// Infinitesimal gauge generators on the composite bundle, jet prolongation,
// and the Lie-derivative test of Lagrangian gauge invariance.
//
// The generator is vertical: v = xi^p J_p^m d_m + theta^a (I_a y)^i d_i with
// theta the h-part of the Wigner derivative.  For Lagrangians declared as
// functions of the formal variables (y, k = D-tilde), the generator acts on
// those variables tensorially: d(y) = theta·I y, d(k) = theta·I k, which makes
// the invariance residual independent of derivatives of the gauge parameter.
// Raw Lagrangians (functions of the jet coordinates themselves) are
// differentiated along the full jet prolongation.

#include <functional>

#include "cosetgauge/connections.hpp"

namespace cosetgauge {

struct GeneratorValue {
  Vector v_sigma;   // f_dim
  Vector v_y;       // k
  Matrix dv_sigma;  // f_dim × D, total derivatives d_lambda v^m
  Matrix dv_y;      // k × D
};

/// (v_sigma, v_y) at a point of Y.
std::pair<Vector, Vector> generator(const CosetChart& chart, const GaugeParameter& xi,
                                    const Vector& x, const Vector& sigma, const Vector& y,
                                    double fd_step = 1e-4);

/// Generator plus total derivatives d_lambda v = (d_lambda + sigma_jet d_m +
/// y_jet d_i) v, all partials by central differences.
GeneratorValue prolong(const CosetChart& chart, const GaugeParameter& xi, const JetPointY& jet,
                       double fd_step = 1e-4);

struct MatterLagrangian {
  enum class Kind { FactoredQuadratic, FactoredCustom, RawKinetic, RawCustom };
  Kind kind = Kind::FactoredQuadratic;
  Matrix q;  // fibre metric on y (FactoredQuadratic)
  Matrix g;  // fibre metric on each D-tilde column (FactoredQuadratic)
  std::function<double(const Vector& y, const Matrix& k)> factored;
  std::function<double(const JetPointY& jet)> raw;

  bool is_factored() const {
    return kind == Kind::FactoredQuadratic || kind == Kind::FactoredCustom;
  }
};

/// L(y, k) = y^T q y + Σ_lambda k_lambda^T g k_lambda.
MatterLagrangian factored_quadratic(Matrix q, Matrix g);
/// L(jet) = Σ_{i,lambda} (y^i_lambda)^2 — the non-invariant control.
MatterLagrangian raw_kinetic();
MatterLagrangian factored_custom(std::function<double(const Vector&, const Matrix&)> body);
MatterLagrangian raw_custom(std::function<double(const JetPointY&)> body);

/// Lie derivative of L along the prolonged gauge generator at the jet point.
double lie_derivative(const MatterLagrangian& lagrangian, const ConnectionOnSigma& conn,
                      const HRepresentation& rep, const CosetChart& chart,
                      const GaugeParameter& xi, const JetPointY& jet,
                      const FdOptions& opts = {});

/// Jet-coordinate Lie derivative of an arbitrary scalar function of the jet;
/// used by Raw Lagrangians and by the rigid-invariance geometry tests.
double lie_derivative_jet(const std::function<double(const JetPointY&)>& f,
                          const CosetChart& chart, const GaugeParameter& xi,
                          const JetPointY& jet, const FdOptions& opts = {});

}  // namespace cosetgauge
