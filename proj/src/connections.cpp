#include "cosetgauge/connections.hpp"

namespace cosetgauge {

Matrix associated_vector_on_sigma(const ConnectionOnX& conn, const CosetChart& chart,
                                  const Vector& x, const Vector& sigma, double fd_step) {
  if (sigma.norm() >= chart.chart_radius)
    throw OutsideChart("associated_vector_on_sigma: sigma outside chart");
  FundamentalFields ff = fundamental_fields(chart, sigma, fd_step);
  return ff.j * conn.eval(x);  // (f_dim × n) · (n × D)
}

Matrix covariant_differential_sigma(const ConnectionOnX& conn, const CosetChart& chart,
                                    const Vector& x, const Vector& sigma, const Matrix& sigma_jet,
                                    double fd_step) {
  return sigma_jet - associated_vector_on_sigma(conn, chart, x, sigma, fd_step);
}

Matrix vertical_covariant_differential(const ConnectionOnSigma& conn, const HRepresentation& rep,
                                       const JetPointY& jet) {
  const Matrix ax = conn.a_x(jet.x, jet.sigma);          // h_dim × D
  const Matrix as = conn.a_s(jet.x, jet.sigma);          // h_dim × f_dim
  const Matrix coeff = ax + as * jet.sigma_jet;          // h_dim × D
  Matrix out = jet.y_jet;
  for (int ai = 0; ai < coeff.rows(); ++ai) {
    const Vector iy = rep.generators[ai] * jet.y;
    for (int lambda = 0; lambda < coeff.cols(); ++lambda)
      out.col(lambda) -= coeff(ai, lambda) * iy;
  }
  return out;
}

Matrix pullback_connection(const ConnectionOnSigma& conn, const CosetChart& chart,
                           const HiggsSection& higgs, const Vector& x, const FdOptions& opts) {
  const Vector h = higgs.value(x);
  if (h.norm() >= chart.chart_radius)
    throw OutsideChart("pullback_connection: Higgs section leaves the chart at this point");
  const Matrix dh = section_jet(higgs, x, opts);  // f_dim × D
  return conn.a_s(x, h) * dh + conn.a_x(x, h);
}

ConnectionOnX gauge_transform_by_map(const ConnectionOnX& conn, const LieAlgebraData& alg,
                                     GroupMap g, double fd_step) {
  ConnectionOnX out;
  out.n = conn.n;
  out.dim_x = conn.dim_x;
  out.coefficients = [conn, alg, g = std::move(g), fd_step](const Vector& x) {
    const Matrix g0 = g(x);
    const Matrix ad = adjoint_of_group_element(alg, g0);
    Matrix a = ad * conn.eval(x);
    const Eigen::PartialPivLU<Matrix> lu(g0);
    for (int lambda = 0; lambda < a.cols(); ++lambda) {
      Vector xp = x, xm = x;
      xp[lambda] += fd_step;
      xm[lambda] -= fd_step;
      const Matrix dg = (g(xp) - g(xm)) / (2.0 * fd_step);
      const Matrix mc = dg * lu.inverse();  // (d_lambda g) g^{-1}
      a.col(lambda) += decompose_checked(alg, mc, 1e-6);
    }
    return a;
  };
  return out;
}

GroupMap exponent_group_map(const LieAlgebraData& alg, const GaugeParameter& exponent) {
  return [alg, exponent](const Vector& x) { return matrix_exp(element(alg, exponent.value(x))); };
}

ConnectionOnX gauge_transform_connection(const ConnectionOnX& conn, const LieAlgebraData& alg,
                                         const GaugeParameter& exponent, double fd_step) {
  return gauge_transform_by_map(conn, alg, exponent_group_map(alg, exponent), fd_step);
}

ReducedComponents split_components(const CosetChart& chart, const Matrix& coefficients) {
  ReducedComponents out;
  out.full = coefficients;
  out.a_bar.resize(chart.split.h_dim(), coefficients.cols());
  out.theta.resize(chart.split.f_dim(), coefficients.cols());
  for (int ai = 0; ai < chart.split.h_dim(); ++ai)
    out.a_bar.row(ai) = coefficients.row(chart.split.h_indices[ai]);
  for (int mi = 0; mi < chart.split.f_dim(); ++mi)
    out.theta.row(mi) = coefficients.row(chart.split.f_indices[mi]);
  return out;
}

ReducedComponents h_component_reduced(const ConnectionOnX& conn, const CosetChart& chart,
                                      const HiggsSection& higgs, const Vector& x,
                                      const FdOptions& opts) {
  const Vector h0 = higgs.value(x);
  if (h0.norm() >= chart.chart_radius)
    throw OutsideChart("h_component_reduced: Higgs section leaves the chart at this point");
  GroupMap adapted = [chart, higgs](const Vector& xx) {
    // s(h(x))^{-1} = exp(-h(x)·E)
    return matrix_exp(-embed_f(chart, higgs.value(xx)));
  };
  ConnectionOnX transformed = gauge_transform_by_map(conn, chart.alg, adapted, opts.step);
  return split_components(chart, transformed.eval(x));
}

ConnectionOnSigma canonical_connection(const CosetChart& chart, int dim_x) {
  ConnectionOnSigma c;
  c.h_dim = chart.split.h_dim();
  c.f_dim = chart.split.f_dim();
  c.dim_x = dim_x;
  const int hd = c.h_dim;
  c.a_x = [hd, dim_x](const Vector&, const Vector&) { return Matrix::Zero(hd, dim_x); };
  c.a_s = [chart](const Vector&, const Vector& sigma) {
    return canonical_sigma_coefficients(chart, sigma);
  };
  return c;
}

}  // namespace cosetgauge
