#pragma once

// Connection operations: associated connections on Sigma, covariant
// differentials (D on Sigma, vertical D-tilde on Y), pull-back connections
// onto reduced subbundles, and gauge transforms.
//
// Frozen transformation law (regression-tested): under a gauge function g(x)
// the coefficients transform as  A' = Ad(g) A + (d_lambda g) g^{-1},  paired
// with the left Wigner action sigma' = g·sigma on coset coordinates.

#include "cosetgauge/coset_chart.hpp"
#include "cosetgauge/fields.hpp"

namespace cosetgauge {

/// M[m][lambda] = Σ_p a^p_lambda(x) J_p^m(sigma): f_dim × D.
Matrix associated_vector_on_sigma(const ConnectionOnX& conn, const CosetChart& chart,
                                  const Vector& x, const Vector& sigma, double fd_step = 1e-4);

/// D[m][lambda] = sigma_jet − Σ_p a^p_lambda J_p^m.
Matrix covariant_differential_sigma(const ConnectionOnX& conn, const CosetChart& chart,
                                    const Vector& x, const Vector& sigma, const Matrix& sigma_jet,
                                    double fd_step = 1e-4);

/// D̃[i][lambda] = y^i_lambda − (A^a_lambda + A^a_m sigma^m_lambda)(I_a y)^i.
Matrix vertical_covariant_differential(const ConnectionOnSigma& conn, const HRepresentation& rep,
                                       const JetPointY& jet);

/// B[a][lambda] = A^a_m(x, h(x)) d_lambda h^m + A^a_lambda(x, h(x)).
Matrix pullback_connection(const ConnectionOnSigma& conn, const CosetChart& chart,
                           const HiggsSection& higgs, const Vector& x, const FdOptions& opts = {});

/// Group-valued gauge function of x.
using GroupMap = std::function<Matrix(const Vector& x)>;

/// A'(x) = Ad(g(x)) A(x) + (d_lambda g) g^{-1}, derivative of g by central
/// differences of the full matrix map.
ConnectionOnX gauge_transform_by_map(const ConnectionOnX& conn, const LieAlgebraData& alg,
                                     GroupMap g, double fd_step = 1e-4);

/// As above with g(x) = exp(Σ_p w^p(x) E_p) from an algebra-valued parameter.
ConnectionOnX gauge_transform_connection(const ConnectionOnX& conn, const LieAlgebraData& alg,
                                         const GaugeParameter& exponent, double fd_step = 1e-4);

GroupMap exponent_group_map(const LieAlgebraData& alg, const GaugeParameter& exponent);

struct ReducedComponents {
  Matrix full;   // adapted-gauge coefficients, n × D
  Matrix a_bar;  // h rows, h_dim × D
  Matrix theta;  // f rows, f_dim × D
};

/// Transforms conn by the adapted gauge g(x) = s(h(x))^{-1}, which moves the
/// Higgs section to the chart origin, then splits the coefficients by index.
ReducedComponents h_component_reduced(const ConnectionOnX& conn, const CosetChart& chart,
                                      const HiggsSection& higgs, const Vector& x,
                                      const FdOptions& opts = {});

/// Splits an n × D coefficient matrix by the chart's index partition.
ReducedComponents split_components(const CosetChart& chart, const Matrix& coefficients);

/// The canonical invariant H-connection of the chart as a ConnectionOnSigma
/// (A^a_lambda = 0, A^a_m = canonical_sigma_coefficients).
ConnectionOnSigma canonical_connection(const CosetChart& chart, int dim_x);

}  // namespace cosetgauge
