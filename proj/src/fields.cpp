#include "cosetgauge/fields.hpp"

namespace cosetgauge {

namespace {

Matrix jet_of(const std::function<Vector(const Vector&)>& f, int dim, const Vector& x,
              const FdOptions& opts) {
  Matrix jet(dim, x.size());
  auto central = [&](int lambda, double h) {
    Vector xp = x, xm = x;
    xp[lambda] += h;
    xm[lambda] -= h;
    return ((f(xp) - f(xm)) / (2.0 * h)).eval();
  };
  for (int lambda = 0; lambda < x.size(); ++lambda) {
    Vector d = central(lambda, opts.step);
    if (opts.richardson) {
      Vector d2 = central(lambda, opts.step / 2.0);
      d = (4.0 * d2 - d) / 3.0;
    }
    jet.col(lambda) = d;
  }
  return jet;
}

}  // namespace

ConnectionOnX connection_on_x_from_exprs(ExprGrid grid) {
  ConnectionOnX c;
  c.n = grid.rows;
  c.dim_x = grid.cols;
  c.coefficients = [g = std::move(grid)](const Vector& x) { return g.eval(EvalPoint{x, Vector()}); };
  return c;
}

ConnectionOnX zero_connection_on_x(int n, int dim_x) {
  ConnectionOnX c;
  c.n = n;
  c.dim_x = dim_x;
  c.coefficients = [n, dim_x](const Vector&) { return Matrix::Zero(n, dim_x); };
  return c;
}

ConnectionOnSigma connection_on_sigma_from_exprs(ExprGrid a_x, ExprGrid a_s, int dim_x) {
  ConnectionOnSigma c;
  c.h_dim = a_x.rows;
  c.f_dim = a_s.cols;
  c.dim_x = dim_x;
  c.a_x = [g = std::move(a_x)](const Vector& x, const Vector& s) { return g.eval(EvalPoint{x, s}); };
  c.a_s = [g = std::move(a_s)](const Vector& x, const Vector& s) { return g.eval(EvalPoint{x, s}); };
  return c;
}

HiggsSection higgs_from_exprs(std::vector<FieldExpr> exprs, int dim_x) {
  HiggsSection h;
  h.f_dim = static_cast<int>(exprs.size());
  h.dim_x = dim_x;
  h.exprs = exprs;
  h.value = [exprs = std::move(exprs)](const Vector& x) {
    Vector out(exprs.size());
    EvalPoint p{x, Vector()};
    for (std::size_t m = 0; m < exprs.size(); ++m) out[static_cast<Index>(m)] = exprs[m].eval(p);
    return out;
  };
  return h;
}

Matrix section_jet(const HiggsSection& h, const Vector& x, const FdOptions& opts) {
  return jet_of(h.value, h.f_dim, x, opts);
}

GaugeParameter gauge_parameter_from_exprs(std::vector<FieldExpr> exprs, int dim_x) {
  GaugeParameter g;
  g.n = static_cast<int>(exprs.size());
  g.dim_x = dim_x;
  g.exprs = exprs;
  g.value = [exprs = std::move(exprs)](const Vector& x) {
    Vector out(exprs.size());
    EvalPoint p{x, Vector()};
    for (std::size_t i = 0; i < exprs.size(); ++i) out[static_cast<Index>(i)] = exprs[i].eval(p);
    return out;
  };
  return g;
}

VectorSection section_from_exprs(std::vector<FieldExpr> exprs, int dim_x) {
  VectorSection s;
  s.dim = static_cast<int>(exprs.size());
  s.dim_x = dim_x;
  s.exprs = exprs;
  s.value = [exprs = std::move(exprs)](const Vector& x) {
    Vector out(exprs.size());
    EvalPoint p{x, Vector()};
    for (std::size_t i = 0; i < exprs.size(); ++i) out[static_cast<Index>(i)] = exprs[i].eval(p);
    return out;
  };
  return s;
}

Matrix section_jet(const VectorSection& s, const Vector& x, const FdOptions& opts) {
  return jet_of(s.value, s.dim, x, opts);
}

}  // namespace cosetgauge
