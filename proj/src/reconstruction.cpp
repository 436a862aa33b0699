#include "cosetgauge/reconstruction.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace cosetgauge {

ThetaSolution solve_theta(const CosetChart& chart, const ConfigPoint& point, double fd_step,
                          double tol) {
  if (point.sigma.norm() >= chart.chart_radius)
    throw OutsideChart("solve_theta: sigma outside chart");
  const int n = chart.alg.dim;
  const int D = static_cast<int>(point.x.size());

  FundamentalFields ff = fundamental_fields(chart, point.sigma, fd_step);
  const Matrix& j = ff.j;  // f_dim × n
  const Matrix d = point.sigma_jet - j * point.a;

  Eigen::JacobiSVD<Matrix> svd(j, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-10);

  ThetaSolution out;
  out.theta.resize(n, D);
  out.residual.resize(D);
  out.rank = static_cast<int>(svd.rank());
  for (int lambda = 0; lambda < D; ++lambda) {
    Vector rhs = d.col(lambda);
    Vector theta = svd.solve(rhs);  // minimum-norm least squares
    out.theta.col(lambda) = theta;
    out.residual[lambda] = (j * theta - rhs).norm();
    if (out.residual[lambda] > tol)
      throw Inconsistent("solve_theta: J is not surjective onto the required directions (residual " +
                         std::to_string(out.residual[lambda]) + " at lambda " +
                         std::to_string(lambda + 1) + ")");
  }
  return out;
}

ConfigPoint adapted_config(const CosetChart& chart, const ConfigPoint& point) {
  if (point.sigma.norm() >= chart.chart_radius)
    throw OutsideChart("adapted_config: sigma outside chart");
  const int D = static_cast<int>(point.x.size());

  // g(x') = s(sigma + sigma_jet (x'-x))^{-1} = exp(-X(x')); only the first
  // jet of g enters the transformed coefficients:
  //   Ad(g) = exp(-ad_X),   (d_lambda g) g^{-1} = -phi1(-ad_X)·sigma_jet_lambda
  const Matrix w = ad_of(chart.alg, lift_f(chart, point.sigma));
  const Matrix ad_g = matrix_exp(-w);
  const Matrix mc_factor = phi1(-w);

  ConfigPoint out = point;
  out.a = ad_g * point.a;
  for (int lambda = 0; lambda < D; ++lambda)
    out.a.col(lambda) -= mc_factor * lift_f(chart, point.sigma_jet.col(lambda));
  out.sigma.setZero();
  out.sigma_jet.setZero();
  return out;
}

namespace {

Matrix universal_from_theta(const CosetChart& chart, const HRepresentation& rep,
                            const ConfigPoint& adapted, const Matrix& theta) {
  Matrix out = adapted.y_jet;
  for (int ai = 0; ai < chart.split.h_dim(); ++ai) {
    const int a = chart.split.h_indices[ai];
    const Vector iy = rep.generators[ai] * adapted.y;
    for (int lambda = 0; lambda < adapted.y_jet.cols(); ++lambda)
      out.col(lambda) -= (adapted.a(a, lambda) - theta(a, lambda)) * iy;
  }
  return out;
}

}  // namespace

Matrix universal_vertical_differential(const CosetChart& chart, const HRepresentation& rep,
                                       const ConfigPoint& point, double fd_step) {
  const ConfigPoint adapted = adapted_config(chart, point);
  const ThetaSolution theta = solve_theta(chart, adapted, fd_step);
  return universal_from_theta(chart, rep, adapted, theta.theta);
}

Matrix universal_vertical_differential_corrupted(const CosetChart& chart,
                                                 const HRepresentation& rep,
                                                 const ConfigPoint& point,
                                                 const Matrix& theta_offset, double fd_step) {
  const ConfigPoint adapted = adapted_config(chart, point);
  const ThetaSolution theta = solve_theta(chart, adapted, fd_step);
  return universal_from_theta(chart, rep, adapted, theta.theta + theta_offset);
}

}  // namespace cosetgauge
