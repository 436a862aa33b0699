#include "cosetgauge/coset_chart.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace cosetgauge {

double default_chart_radius(const LieAlgebraData& alg) {
  double worst = 0.0;
  for (int p = 0; p < alg.dim; ++p) {
    Eigen::JacobiSVD<Matrix> svd(ad_matrix(alg, p));
    worst = std::max(worst, svd.singularValues()(0));
  }
  if (worst <= 0.0) return 1e6;  // abelian: the chart is global
  return 0.9 * M_PI / worst;
}

CosetChart make_chart(LieAlgebraData alg, ReductiveSplit split, HRepresentation rep,
                      double chart_radius) {
  ReductiveReport report = check_reductive(alg, split);
  if (!report.reductive()) {
    std::string msg = "split is not reductive: ";
    msg += describe(report.violations.front(), alg);
    throw ValidationError(msg);
  }
  validate_representation(alg, split, rep);
  CosetChart chart{std::move(alg), std::move(split), std::move(rep), chart_radius};
  if (chart.chart_radius <= 0.0) chart.chart_radius = default_chart_radius(chart.alg);
  return chart;
}

Matrix embed_f(const CosetChart& chart, const Vector& sigma) {
  Matrix m = Matrix::Zero(chart.alg.mat_dim, chart.alg.mat_dim);
  for (int mi = 0; mi < chart.split.f_dim(); ++mi)
    m += sigma[mi] * chart.alg.matrices[chart.split.f_indices[mi]];
  return m;
}

Matrix embed_h(const CosetChart& chart, const Vector& theta) {
  Matrix m = Matrix::Zero(chart.alg.mat_dim, chart.alg.mat_dim);
  for (int ai = 0; ai < chart.split.h_dim(); ++ai)
    m += theta[ai] * chart.alg.matrices[chart.split.h_indices[ai]];
  return m;
}

Vector lift_f(const CosetChart& chart, const Vector& sigma) {
  Vector full = Vector::Zero(chart.alg.dim);
  for (int mi = 0; mi < chart.split.f_dim(); ++mi) full[chart.split.f_indices[mi]] = sigma[mi];
  return full;
}

Vector project_f(const CosetChart& chart, const Vector& coords) {
  Vector out(chart.split.f_dim());
  for (int mi = 0; mi < chart.split.f_dim(); ++mi) out[mi] = coords[chart.split.f_indices[mi]];
  return out;
}

Vector project_h(const CosetChart& chart, const Vector& coords) {
  Vector out(chart.split.h_dim());
  for (int ai = 0; ai < chart.split.h_dim(); ++ai) out[ai] = coords[chart.split.h_indices[ai]];
  return out;
}

Matrix representative(const CosetChart& chart, const Vector& sigma) {
  if (sigma.norm() >= chart.chart_radius)
    throw OutsideChart("||sigma|| = " + std::to_string(sigma.norm()) +
                       " is outside the chart radius " + std::to_string(chart.chart_radius));
  return matrix_exp(embed_f(chart, sigma));
}

namespace {

Matrix representative_raw(const CosetChart& chart, const Vector& sigma) {
  return matrix_exp(embed_f(chart, sigma));
}

/// f-part of log(s(sp)^{-1} M); the Wigner residual map.
Vector wigner_residual(const CosetChart& chart, const Matrix& M, const Vector& sp) {
  Matrix s = representative_raw(chart, sp);
  Matrix h = s.partialPivLu().solve(M);
  Matrix l = matrix_log(h);
  Vector coords = decompose(chart.alg, l);
  return project_f(chart, coords);
}

}  // namespace

WignerResult wigner_decompose(const CosetChart& chart, const Matrix& g, const Vector& sigma,
                              const WignerOptions& opts) {
  const Matrix M = g * representative(chart, sigma);
  const int fd = chart.split.f_dim();

  Vector sp = sigma;
  // initial guess: f-coordinates of log M when the principal log exists
  {
    Matrix l = M.log();
    if (l.allFinite()) sp = project_f(chart, decompose(chart.alg, l));
  }

  Vector F;
  try {
    F = wigner_residual(chart, M, sp);
  } catch (const NoConvergence&) {
    sp = sigma;  // log-based guess landed on a bad branch; restart from sigma
    F = wigner_residual(chart, M, sp);
  }

  int it = 0;
  for (; it < opts.max_iter; ++it) {
    if (F.norm() <= opts.tol) break;

    // damped Newton with a finite-difference Jacobian
    Matrix J(fd, fd);
    const double h = 1e-6;
    for (int j = 0; j < fd; ++j) {
      Vector e = Vector::Zero(fd);
      e[j] = h;
      J.col(j) = (wigner_residual(chart, M, sp + e) - wigner_residual(chart, M, sp - e)) / (2.0 * h);
    }
    Vector delta = J.colPivHouseholderQr().solve(F);
    double scale = 1.0;
    bool stepped = false;
    for (int back = 0; back < 12; ++back) {
      Vector cand = sp - scale * delta;
      try {
        Vector Fc = wigner_residual(chart, M, cand);
        if (Fc.norm() < F.norm() || Fc.norm() <= opts.tol) {
          sp = cand;
          F = Fc;
          stepped = true;
          break;
        }
      } catch (const NoConvergence&) {
        // candidate left the domain of the principal log; shrink further
      }
      scale *= 0.5;
    }
    if (!stepped) throw NoConvergence("wigner_decompose: line search failed");
  }
  if (F.norm() > opts.tol)
    throw NoConvergence("wigner_decompose did not converge in " + std::to_string(opts.max_iter) +
                        " iterations (residual " + std::to_string(F.norm()) + ")");
  if (sp.norm() >= chart.chart_radius)
    throw OutsideChart("wigner_decompose: solution has ||sigma'|| = " + std::to_string(sp.norm()) +
                       " outside the chart radius");

  WignerResult out;
  out.sigma_new = sp;
  Matrix s = representative_raw(chart, sp);
  out.h_element = s.partialPivLu().solve(M);
  out.iterations = it;
  out.h_defect = F.norm();
  return out;
}

FundamentalVector fundamental_vector(const CosetChart& chart, const Vector& xi,
                                     const Vector& sigma, double step) {
  const Matrix X = element(chart.alg, xi);
  WignerResult plus = wigner_decompose(chart, matrix_exp(step * X), sigma);
  WignerResult minus = wigner_decompose(chart, matrix_exp(-step * X), sigma);
  FundamentalVector out;
  out.j_value = (plus.sigma_new - minus.sigma_new) / (2.0 * step);
  Matrix dh = (plus.h_element - minus.h_element) / (2.0 * step);
  Vector coords = decompose_checked(chart.alg, dh, 1e-6);
  out.theta = project_h(chart, coords);
  return out;
}

FundamentalFields fundamental_fields(const CosetChart& chart, const Vector& sigma, double step) {
  const int n = chart.alg.dim;
  FundamentalFields out;
  out.j.resize(chart.split.f_dim(), n);
  out.theta.resize(chart.split.h_dim(), n);
  for (int p = 0; p < n; ++p) {
    Vector xi = Vector::Zero(n);
    xi[p] = 1.0;
    FundamentalVector fv = fundamental_vector(chart, xi, sigma, step);
    out.j.col(p) = fv.j_value;
    out.theta.col(p) = fv.theta;
  }
  return out;
}

Matrix rep_exp(const CosetChart& chart, const Vector& theta) {
  Matrix m = Matrix::Zero(chart.rep.fibre_dim, chart.rep.fibre_dim);
  for (int ai = 0; ai < chart.split.h_dim(); ++ai) m += theta[ai] * chart.rep.generators[ai];
  return matrix_exp(m);
}

Matrix canonical_sigma_coefficients(const CosetChart& chart, const Vector& sigma) {
  const Matrix w = ad_of(chart.alg, lift_f(chart, sigma));
  const Matrix tau = phi1(-w);  // s^{-1} d_m s coordinates: tau * e_m
  Matrix a(chart.split.h_dim(), chart.split.f_dim());
  for (int mi = 0; mi < chart.split.f_dim(); ++mi)
    for (int ai = 0; ai < chart.split.h_dim(); ++ai)
      a(ai, mi) = -tau(chart.split.h_indices[ai], chart.split.f_indices[mi]);
  return a;
}

}  // namespace cosetgauge
