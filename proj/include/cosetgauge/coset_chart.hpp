#pragma once

// Local normal-coordinate chart of G/H: coset representatives s(sigma) =
// exp(sigma^m E_m), the Wigner decomposition g·s(sigma) = s(sigma')·h, and
// the fundamental vector fields J_p with their h-parts theta.

#include "cosetgauge/lie_algebra.hpp"

namespace cosetgauge {

struct CosetChart {
  LieAlgebraData alg;
  ReductiveSplit split;
  HRepresentation rep;
  double chart_radius = 0.0;
};

/// 0.9·pi / max_p ||ad_p||_2 — keeps normal coordinates clear of the cut locus
/// for the compact built-ins.
double default_chart_radius(const LieAlgebraData& alg);

/// Validates the split (subalgebra + [f,h] ⊂ f required) and the representation.
CosetChart make_chart(LieAlgebraData alg, ReductiveSplit split, HRepresentation rep,
                      double chart_radius = 0.0);

/// Embeds f-coordinates as the algebra element Σ_m sigma^m E_{f_m}.
Matrix embed_f(const CosetChart& chart, const Vector& sigma);
/// Embeds h-coordinates as Σ_a theta^a E_{h_a}.
Matrix embed_h(const CosetChart& chart, const Vector& theta);
/// Full-algebra coordinate vector with the f-block set to sigma.
Vector lift_f(const CosetChart& chart, const Vector& sigma);
Vector project_f(const CosetChart& chart, const Vector& coords);
Vector project_h(const CosetChart& chart, const Vector& coords);

/// s(sigma) = exp(Σ sigma^m E_m); throws OutsideChart for ||sigma|| ≥ radius.
Matrix representative(const CosetChart& chart, const Vector& sigma);

struct WignerResult {
  Vector sigma_new;
  Matrix h_element;
  int iterations = 0;
  double h_defect = 0.0;  // norm of the f-part of log(h_element)
};

struct WignerOptions {
  double tol = 1e-10;
  int max_iter = 64;
};

/// Solves g·s(sigma) = s(sigma')·h for sigma' and h = s(sigma')^{-1} g s(sigma).
WignerResult wigner_decompose(const CosetChart& chart, const Matrix& g, const Vector& sigma,
                              const WignerOptions& opts = {});

struct FundamentalVector {
  Vector j_value;  // f_dim
  Vector theta;    // h_dim
};

/// Central difference of the Wigner decomposition along exp(t·xi).
FundamentalVector fundamental_vector(const CosetChart& chart, const Vector& xi,
                                     const Vector& sigma, double step = 1e-4);

struct FundamentalFields {
  Matrix j;      // f_dim × n, column p = J_p(sigma)
  Matrix theta;  // h_dim × n, column p = theta_p(sigma)
};
FundamentalFields fundamental_fields(const CosetChart& chart, const Vector& sigma,
                                     double step = 1e-4);

/// exp(Σ theta^a I_a) on the fibre.
Matrix rep_exp(const CosetChart& chart, const Vector& theta);

/// Coefficients A^a_m(sigma) of the canonical invariant H-connection in this
/// chart: minus the h-part of (1 - e^{-ad_X})/ad_X on the f-directions,
/// X = sigma·E.  Returned h_dim × f_dim; the x-leg coefficients vanish.
Matrix canonical_sigma_coefficients(const CosetChart& chart, const Vector& sigma);

}  // namespace cosetgauge
