#include "cosetgauge/lie_algebra.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace cosetgauge {

namespace {

Matrix flatten_basis(const std::vector<Matrix>& matrices) {
  const int n = static_cast<int>(matrices.size());
  const Index d2 = matrices[0].size();
  Matrix B(d2, n);
  for (int p = 0; p < n; ++p)
    B.col(p) = Eigen::Map<const Vector>(matrices[p].data(), d2);
  return B;
}

}  // namespace

ReductiveSplit make_split(int dim, std::vector<int> h_indices) {
  std::sort(h_indices.begin(), h_indices.end());
  ReductiveSplit s;
  s.h_indices = h_indices;
  for (int i = 0; i < dim; ++i)
    if (!std::binary_search(h_indices.begin(), h_indices.end(), i)) s.f_indices.push_back(i);
  return s;
}

std::vector<Matrix> structure_constants_from_matrices(const std::vector<Matrix>& matrices,
                                                      double tol, double* max_residual) {
  const int n = static_cast<int>(matrices.size());
  const Matrix B = flatten_basis(matrices);
  Eigen::JacobiSVD<Matrix> svd(B, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.singularValues()(n - 1) < 1e-12 * svd.singularValues()(0))
    throw DependentBasis("basis matrices are linearly dependent (Gram matrix singular)");

  std::vector<Matrix> c(n, Matrix::Zero(n, n));
  double worst = 0.0;
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (p == q) continue;
      Matrix comm = matrices[p] * matrices[q] - matrices[q] * matrices[p];
      Vector rhs = Eigen::Map<const Vector>(comm.data(), comm.size());
      Vector coords = svd.solve(rhs);
      double res = (B * coords - rhs).norm();
      worst = std::max(worst, res);
      if (res > tol * std::max(1.0, rhs.norm()))
        throw SpanViolation("commutator [E_" + std::to_string(p + 1) + ", E_" +
                            std::to_string(q + 1) + "] leaves the basis span (residual " +
                            std::to_string(res) + ")");
      for (int r = 0; r < n; ++r) c[r](p, q) = coords[r];
    }
  }
  if (max_residual) *max_residual = worst;
  return c;
}

LieAlgebraData make_algebra(std::vector<Matrix> matrices, std::vector<std::string> labels,
                            double span_tol, double check_tol) {
  LieAlgebraData alg;
  alg.dim = static_cast<int>(matrices.size());
  alg.mat_dim = static_cast<int>(matrices[0].rows());
  alg.matrices = std::move(matrices);
  if (labels.empty())
    for (int p = 0; p < alg.dim; ++p) labels.push_back("e" + std::to_string(p + 1));
  alg.basis_labels = std::move(labels);
  alg.structure = structure_constants_from_matrices(alg.matrices, span_tol);
  AlgebraResiduals res = algebra_residuals(alg);
  if (res.max() > check_tol)
    throw ValidationError("algebra residuals exceed tolerance: antisymmetry " +
                          std::to_string(res.antisymmetry) + ", jacobi " +
                          std::to_string(res.jacobi) + ", realization " +
                          std::to_string(res.realization));
  return alg;
}

AlgebraResiduals algebra_residuals(const LieAlgebraData& alg) {
  const int n = alg.dim;
  AlgebraResiduals out;
  for (int r = 0; r < n; ++r)
    out.antisymmetry = std::max(out.antisymmetry,
                                (alg.structure[r] + alg.structure[r].transpose()).cwiseAbs().maxCoeff());
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int u = 0; u < n; ++u) {
          double sum = 0.0;
          for (int s = 0; s < n; ++s)
            sum += alg.c(s, p, q) * alg.c(u, s, r) + alg.c(s, q, r) * alg.c(u, s, p) +
                   alg.c(s, r, p) * alg.c(u, s, q);
          out.jacobi = std::max(out.jacobi, std::abs(sum));
        }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      Matrix comm = alg.matrices[p] * alg.matrices[q] - alg.matrices[q] * alg.matrices[p];
      for (int r = 0; r < n; ++r) comm -= alg.c(r, p, q) * alg.matrices[r];
      out.realization = std::max(out.realization, comm.cwiseAbs().maxCoeff());
    }
  return out;
}

double AlgebraResiduals::max() const { return std::max({antisymmetry, jacobi, realization}); }

void validate_representation(const LieAlgebraData& alg, const ReductiveSplit& split,
                             const HRepresentation& rep, double tol) {
  const int hd = split.h_dim();
  if (static_cast<int>(rep.generators.size()) != hd)
    throw ValidationError("representation generator count does not match h dimension");
  for (const Matrix& I : rep.generators)
    if (I.rows() != rep.fibre_dim || I.cols() != rep.fibre_dim)
      throw ValidationError("representation generator has wrong shape");
  for (int ai = 0; ai < hd; ++ai)
    for (int bi = 0; bi < hd; ++bi) {
      Matrix comm = rep.generators[ai] * rep.generators[bi] - rep.generators[bi] * rep.generators[ai];
      for (int ci = 0; ci < hd; ++ci)
        comm -= alg.c(split.h_indices[ci], split.h_indices[ai], split.h_indices[bi]) *
                rep.generators[ci];
      if (comm.cwiseAbs().maxCoeff() > tol)
        throw ValidationError("representation generators do not satisfy the h commutation relations");
    }
}

Matrix element(const LieAlgebraData& alg, const Vector& coords) {
  Matrix m = Matrix::Zero(alg.mat_dim, alg.mat_dim);
  for (int p = 0; p < alg.dim; ++p) m += coords[p] * alg.matrices[p];
  return m;
}

Vector decompose(const LieAlgebraData& alg, const Matrix& M, double* residual) {
  const Matrix B = flatten_basis(alg.matrices);
  Vector rhs = Eigen::Map<const Vector>(M.data(), M.size());
  Vector coords = B.colPivHouseholderQr().solve(rhs);
  if (residual) *residual = (B * coords - rhs).norm();
  return coords;
}

Vector decompose_checked(const LieAlgebraData& alg, const Matrix& M, double tol) {
  double res = 0.0;
  Vector coords = decompose(alg, M, &res);
  if (res > tol * std::max(1.0, M.norm()))
    throw SpanViolation("matrix leaves the algebra span (residual " + std::to_string(res) + ")");
  return coords;
}

Matrix ad_matrix(const LieAlgebraData& alg, int p) {
  const int n = alg.dim;
  Matrix ad(n, n);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) ad(r, s) = alg.c(r, p, s);
  return ad;
}

Matrix ad_of(const LieAlgebraData& alg, const Vector& coords) {
  Matrix ad = Matrix::Zero(alg.dim, alg.dim);
  for (int p = 0; p < alg.dim; ++p)
    if (coords[p] != 0.0) ad += coords[p] * ad_matrix(alg, p);
  return ad;
}

Matrix killing_form(const LieAlgebraData& alg) {
  const int n = alg.dim;
  std::vector<Matrix> ads;
  ads.reserve(n);
  for (int p = 0; p < n; ++p) ads.push_back(ad_matrix(alg, p));
  Matrix k(n, n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q) k(p, q) = k(q, p) = (ads[p] * ads[q]).trace();
  return k;
}

Matrix matrix_exp(const Matrix& m) { return m.exp(); }

Matrix matrix_log(const Matrix& m) {
  Matrix l = m.log();
  if (!l.allFinite()) throw NoConvergence("matrix logarithm did not produce a finite result");
  return l;
}

Matrix phi1(const Matrix& m) {
  const Index n = m.rows();
  Matrix block = Matrix::Zero(2 * n, 2 * n);
  block.topLeftCorner(n, n) = m;
  block.topRightCorner(n, n) = Matrix::Identity(n, n);
  return block.exp().topRightCorner(n, n);
}

Matrix adjoint_of_group_element(const LieAlgebraData& alg, const Matrix& g, double tol,
                                double* residual) {
  Eigen::PartialPivLU<Matrix> lu(g);
  const Matrix B = flatten_basis(alg.matrices);
  Eigen::ColPivHouseholderQR<Matrix> qr(B);
  Matrix ad(alg.dim, alg.dim);
  double worst = 0.0;
  for (int p = 0; p < alg.dim; ++p) {
    Matrix conj = g * alg.matrices[p] * lu.inverse();
    Vector rhs = Eigen::Map<const Vector>(conj.data(), conj.size());
    Vector coords = qr.solve(rhs);
    double res = (B * coords - rhs).norm();
    worst = std::max(worst, res);
    if (res > tol * std::max(1.0, rhs.norm()))
      throw SpanViolation("g E_" + std::to_string(p + 1) +
                          " g^-1 leaves the algebra span (residual " + std::to_string(res) + ")");
    ad.col(p) = coords;
  }
  if (residual) *residual = worst;
  return ad;
}

ReductiveReport check_reductive(const LieAlgebraData& alg, const ReductiveSplit& split,
                                double tol) {
  ReductiveReport rep;
  auto record = [&](ReductiveViolation::Condition cond, int p, int q, int r, double v) {
    rep.violations.push_back({cond, p, q, r, v});
    switch (cond) {
      case ReductiveViolation::Condition::Subalgebra: rep.subalgebra_ok = false; break;
      case ReductiveViolation::Condition::FHinF: rep.fh_in_f_ok = false; break;
      case ReductiveViolation::Condition::FFinH: rep.ff_in_h_ok = false; break;
    }
  };
  for (int a : split.h_indices)
    for (int b : split.h_indices)
      for (int r : split.f_indices)
        if (std::abs(alg.c(r, a, b)) > tol)
          record(ReductiveViolation::Condition::Subalgebra, a, b, r, alg.c(r, a, b));
  for (int m : split.f_indices)
    for (int a : split.h_indices)
      for (int r : split.h_indices)
        if (std::abs(alg.c(r, m, a)) > tol)
          record(ReductiveViolation::Condition::FHinF, m, a, r, alg.c(r, m, a));
  for (int m : split.f_indices)
    for (int k : split.f_indices)
      for (int r : split.f_indices)
        if (std::abs(alg.c(r, m, k)) > tol)
          record(ReductiveViolation::Condition::FFinH, m, k, r, alg.c(r, m, k));
  return rep;
}

std::string describe(const ReductiveViolation& v, const LieAlgebraData& alg) {
  auto nm = [&](int i) { return alg.basis_labels[i]; };
  std::string kind;
  switch (v.condition) {
    case ReductiveViolation::Condition::Subalgebra:
      kind = "[" + nm(v.p) + "," + nm(v.q) + "] has component " + nm(v.r) + " outside h";
      break;
    case ReductiveViolation::Condition::FHinF:
      kind = "[" + nm(v.p) + "," + nm(v.q) + "] has component " + nm(v.r) + " outside f";
      break;
    case ReductiveViolation::Condition::FFinH:
      kind = "[" + nm(v.p) + "," + nm(v.q) + "] has component " + nm(v.r) + " outside h";
      break;
  }
  return kind + " (c = " + std::to_string(v.value) + ")";
}

AdaptedSplit orthogonal_complement_split(const LieAlgebraData& alg,
                                         const std::vector<int>& h_indices, double tol) {
  const int n = alg.dim;
  const int hd = static_cast<int>(h_indices.size());
  Matrix kappa = killing_form(alg);

  Matrix kh(hd, hd);
  for (int i = 0; i < hd; ++i)
    for (int j = 0; j < hd; ++j) kh(i, j) = kappa(h_indices[i], h_indices[j]);
  Eigen::JacobiSVD<Matrix> svd_h(kh);
  if (hd > 0 && svd_h.singularValues()(hd - 1) <= tol * std::max(1.0, svd_h.singularValues()(0)))
    throw DegenerateKilling("Killing form restricted to h is singular");

  // complement = kernel of the h rows of the Killing form
  Matrix rows(hd, n);
  for (int i = 0; i < hd; ++i) rows.row(i) = kappa.row(h_indices[i]);
  Eigen::FullPivLU<Matrix> lu(rows);
  lu.setThreshold(1e-10);
  Matrix ker = lu.kernel();  // n × (n - rank)
  if (ker.cols() != n - hd)
    throw DegenerateKilling("Killing-orthogonal complement has wrong dimension");

  // orthonormalize complement coordinates for a stable adapted basis
  Eigen::HouseholderQR<Matrix> qr(ker);
  Matrix q = qr.householderQ() * Matrix::Identity(n, ker.cols());

  std::vector<Matrix> basis;
  std::vector<std::string> labels;
  for (int i = 0; i < hd; ++i) {
    basis.push_back(alg.matrices[h_indices[i]]);
    labels.push_back(alg.basis_labels[h_indices[i]]);
  }
  for (int j = 0; j < q.cols(); ++j) {
    Matrix f = Matrix::Zero(alg.mat_dim, alg.mat_dim);
    for (int p = 0; p < n; ++p) f += q(p, j) * alg.matrices[p];
    basis.push_back(f);
    labels.push_back("f" + std::to_string(j + 1));
  }

  AdaptedSplit out;
  out.algebra = make_algebra(std::move(basis), std::move(labels), 1e-8, 1e-9);
  std::vector<int> h_new(hd);
  for (int i = 0; i < hd; ++i) h_new[i] = i;
  out.split = make_split(n, h_new);
  out.report = check_reductive(out.algebra, out.split, 1e-9);
  return out;
}

}  // namespace cosetgauge
