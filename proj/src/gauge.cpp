#include "cosetgauge/gauge.hpp"

#include <cmath>
#include <tuple>
#include <vector>

namespace cosetgauge {

std::pair<Vector, Vector> generator(const CosetChart& chart, const GaugeParameter& xi,
                                    const Vector& x, const Vector& sigma, const Vector& y,
                                    double fd_step) {
  FundamentalVector fv = fundamental_vector(chart, xi.value(x), sigma, fd_step);
  Vector v_y = Vector::Zero(y.size());
  for (int ai = 0; ai < chart.split.h_dim(); ++ai)
    v_y += fv.theta[ai] * (chart.rep.generators[ai] * y);
  return {fv.j_value, v_y};
}

GeneratorValue prolong(const CosetChart& chart, const GaugeParameter& xi, const JetPointY& jet,
                       double fd_step) {
  const int D = static_cast<int>(jet.x.size());
  const int F = static_cast<int>(jet.sigma.size());
  const int k = static_cast<int>(jet.y.size());

  GeneratorValue out;
  auto at = [&](const Vector& x, const Vector& sigma, const Vector& y) {
    return generator(chart, xi, x, sigma, y, fd_step);
  };
  std::tie(out.v_sigma, out.v_y) = at(jet.x, jet.sigma, jet.y);

  // partials of the generator map by central differences
  std::vector<std::pair<Vector, Vector>> dx(D), ds(F), dy(k);
  for (int l = 0; l < D; ++l) {
    Vector xp = jet.x, xm = jet.x;
    xp[l] += fd_step;
    xm[l] -= fd_step;
    auto p = at(xp, jet.sigma, jet.y);
    auto m = at(xm, jet.sigma, jet.y);
    dx[l] = {(p.first - m.first) / (2 * fd_step), (p.second - m.second) / (2 * fd_step)};
  }
  for (int mi = 0; mi < F; ++mi) {
    Vector sp = jet.sigma, sm = jet.sigma;
    sp[mi] += fd_step;
    sm[mi] -= fd_step;
    auto p = at(jet.x, sp, jet.y);
    auto m = at(jet.x, sm, jet.y);
    ds[mi] = {(p.first - m.first) / (2 * fd_step), (p.second - m.second) / (2 * fd_step)};
  }
  for (int i = 0; i < k; ++i) {
    Vector yp = jet.y, ym = jet.y;
    yp[i] += fd_step;
    ym[i] -= fd_step;
    auto p = at(jet.x, jet.sigma, yp);
    auto m = at(jet.x, jet.sigma, ym);
    dy[i] = {(p.first - m.first) / (2 * fd_step), (p.second - m.second) / (2 * fd_step)};
  }

  out.dv_sigma.resize(F, D);
  out.dv_y.resize(k, D);
  for (int l = 0; l < D; ++l) {
    Vector total_sigma = dx[l].first;
    Vector total_y = dx[l].second;
    for (int mi = 0; mi < F; ++mi) {
      total_sigma += jet.sigma_jet(mi, l) * ds[mi].first;
      total_y += jet.sigma_jet(mi, l) * ds[mi].second;
    }
    for (int i = 0; i < k; ++i) {
      total_sigma += jet.y_jet(i, l) * dy[i].first;
      total_y += jet.y_jet(i, l) * dy[i].second;
    }
    out.dv_sigma.col(l) = total_sigma;
    out.dv_y.col(l) = total_y;
  }
  return out;
}

MatterLagrangian factored_quadratic(Matrix q, Matrix g) {
  MatterLagrangian l;
  l.kind = MatterLagrangian::Kind::FactoredQuadratic;
  l.q = std::move(q);
  l.g = std::move(g);
  l.factored = [q = l.q, g = l.g](const Vector& y, const Matrix& k) {
    double out = y.dot(q * y);
    for (int lambda = 0; lambda < k.cols(); ++lambda) out += k.col(lambda).dot(g * k.col(lambda));
    return out;
  };
  return l;
}

MatterLagrangian raw_kinetic() {
  MatterLagrangian l;
  l.kind = MatterLagrangian::Kind::RawKinetic;
  l.raw = [](const JetPointY& jet) { return jet.y_jet.squaredNorm(); };
  return l;
}

MatterLagrangian factored_custom(std::function<double(const Vector&, const Matrix&)> body) {
  MatterLagrangian l;
  l.kind = MatterLagrangian::Kind::FactoredCustom;
  l.factored = std::move(body);
  return l;
}

MatterLagrangian raw_custom(std::function<double(const JetPointY&)> body) {
  MatterLagrangian l;
  l.kind = MatterLagrangian::Kind::RawCustom;
  l.raw = std::move(body);
  return l;
}

double lie_derivative_jet(const std::function<double(const JetPointY&)>& f,
                          const CosetChart& chart, const GaugeParameter& xi,
                          const JetPointY& jet, const FdOptions& opts) {
  GeneratorValue gen = prolong(chart, xi, jet, opts.step);
  const double h = opts.step;

  double acc = 0.0;
  // v^m dL/dsigma^m
  for (int mi = 0; mi < jet.sigma.size(); ++mi) {
    JetPointY p = jet, m = jet;
    p.sigma[mi] += h;
    m.sigma[mi] -= h;
    acc += gen.v_sigma[mi] * (f(p) - f(m)) / (2 * h);
  }
  // v^i dL/dy^i
  for (int i = 0; i < jet.y.size(); ++i) {
    JetPointY p = jet, m = jet;
    p.y[i] += h;
    m.y[i] -= h;
    acc += gen.v_y[i] * (f(p) - f(m)) / (2 * h);
  }
  // d_lambda v^m dL/dsigma^m_lambda
  for (int mi = 0; mi < jet.sigma.size(); ++mi)
    for (int l = 0; l < jet.x.size(); ++l) {
      JetPointY p = jet, m = jet;
      p.sigma_jet(mi, l) += h;
      m.sigma_jet(mi, l) -= h;
      acc += gen.dv_sigma(mi, l) * (f(p) - f(m)) / (2 * h);
    }
  // d_lambda v^i dL/dy^i_lambda
  for (int i = 0; i < jet.y.size(); ++i)
    for (int l = 0; l < jet.x.size(); ++l) {
      JetPointY p = jet, m = jet;
      p.y_jet(i, l) += h;
      m.y_jet(i, l) -= h;
      acc += gen.dv_y(i, l) * (f(p) - f(m)) / (2 * h);
    }
  return acc;
}

double lie_derivative(const MatterLagrangian& lagrangian, const ConnectionOnSigma& conn,
                      const HRepresentation& rep, const CosetChart& chart,
                      const GaugeParameter& xi, const JetPointY& jet, const FdOptions& opts) {
  if (!lagrangian.is_factored()) {
    return lie_derivative_jet(lagrangian.raw, chart, xi, jet, opts);
  }

  // Factored L(y, k): the generator acts on the formal variables by the
  // fibre H-rotation theta; no jet prolongation enters.
  const Matrix k = vertical_covariant_differential(conn, rep, jet);
  FundamentalVector fv = fundamental_vector(chart, xi.value(jet.x), jet.sigma, opts.step);

  Vector dy = Vector::Zero(jet.y.size());
  Matrix dk = Matrix::Zero(k.rows(), k.cols());
  for (int ai = 0; ai < chart.split.h_dim(); ++ai) {
    dy += fv.theta[ai] * (rep.generators[ai] * jet.y);
    dk += fv.theta[ai] * (rep.generators[ai] * k);
  }

  const double h = opts.step;
  double acc = 0.0;
  for (int i = 0; i < jet.y.size(); ++i) {
    Vector yp = jet.y, ym = jet.y;
    yp[i] += h;
    ym[i] -= h;
    acc += dy[i] * (lagrangian.factored(yp, k) - lagrangian.factored(ym, k)) / (2 * h);
  }
  for (int i = 0; i < k.rows(); ++i)
    for (int l = 0; l < k.cols(); ++l) {
      Matrix kp = k, km = k;
      kp(i, l) += h;
      km(i, l) -= h;
      acc += dk(i, l) * (lagrangian.factored(jet.y, kp) - lagrangian.factored(jet.y, km)) / (2 * h);
    }
  return acc;
}

}  // namespace cosetgauge
