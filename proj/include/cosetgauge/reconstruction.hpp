#pragma once

// Reconstruction of the universal vertical differential from a configuration
// point (x, a, a_jet, sigma, sigma_jet, y, y_jet): adapted-gauge transport of
// the point to the chart origin, the linear solve for Theta, and the
// universal D-tilde whose h-coefficients are a^a_lambda - Theta^a_lambda.

#include "cosetgauge/connections.hpp"

namespace cosetgauge {

struct ConfigPoint {
  Vector x;                   // D
  Matrix a;                   // n × D, gauge potentials a^r_mu
  std::vector<Matrix> a_jet;  // per r: D × D array a^r_{lambda mu} (carried, unused)
  Vector sigma;               // F
  Matrix sigma_jet;           // F × D
  Vector y;                   // k
  Matrix y_jet;               // k × D
};

struct ThetaSolution {
  Matrix theta;     // n × D, minimum-norm solution of Theta^p_lambda J_p^m = D^m_lambda
  Vector residual;  // per-lambda least-squares residual norm
  int rank = 0;     // rank of J at this sigma
};

/// Minimum-norm Theta with Σ_p Theta^p_lambda J_p^m(sigma) = D^m_lambda,
/// D the covariant differential of (sigma, sigma_jet) under a.  Throws
/// Inconsistent when a residual exceeds `tol`.
ThetaSolution solve_theta(const CosetChart& chart, const ConfigPoint& point,
                          double fd_step = 1e-4, double tol = 1e-8);

/// Gauge-transports the point to the chart origin with g(x') built from the
/// linear extension of the first-order Higgs jet; sigma and sigma_jet become
/// zero and `a` picks up Ad(s(sigma)^{-1}) plus the exact Maurer-Cartan term.
ConfigPoint adapted_config(const CosetChart& chart, const ConfigPoint& point);

/// D̃^i_lambda = y^i_lambda − (a^a_lambda − Theta^a_lambda)(I_a y)^i in the
/// adapted gauge, h rows only.
Matrix universal_vertical_differential(const CosetChart& chart, const HRepresentation& rep,
                                       const ConfigPoint& point, double fd_step = 1e-4);

/// As above with an additive perturbation of Theta (sensitivity controls).
Matrix universal_vertical_differential_corrupted(const CosetChart& chart,
                                                 const HRepresentation& rep,
                                                 const ConfigPoint& point,
                                                 const Matrix& theta_offset,
                                                 double fd_step = 1e-4);

}  // namespace cosetgauge
