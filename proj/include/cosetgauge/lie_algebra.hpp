#pragma once

// Finite-dimensional real matrix Lie algebras: structure constants,
// reductive decompositions, Killing form, exponential and adjoint machinery.

#include <string>
#include <vector>

#include "cosetgauge/errors.hpp"
#include "cosetgauge/types.hpp"

namespace cosetgauge {

/// Basis {E_p} of d×d real matrices with structure constants
/// [E_p, E_q] = c^r_{pq} E_r, stored as structure[r](p,q) = c^r_{pq}.
struct LieAlgebraData {
  int dim = 0;      // n
  int mat_dim = 0;  // d
  std::vector<std::string> basis_labels;
  std::vector<Matrix> matrices;
  std::vector<Matrix> structure;

  /// Structure constant c^r_{pq} (all 0-based).
  double c(int r, int p, int q) const { return structure[r](p, q); }
};

/// Index partition of {0..n-1} into the subalgebra h and its supplement f.
struct ReductiveSplit {
  std::vector<int> h_indices;
  std::vector<int> f_indices;
  int h_dim() const { return static_cast<int>(h_indices.size()); }
  int f_dim() const { return static_cast<int>(f_indices.size()); }
};

ReductiveSplit make_split(int dim, std::vector<int> h_indices);

struct ReductiveViolation {
  enum class Condition { Subalgebra, FHinF, FFinH };
  Condition condition;
  int p, q, r;   // 0-based basis indices
  double value;  // the offending c^r_{pq}
};

struct ReductiveReport {
  std::vector<ReductiveViolation> violations;
  bool subalgebra_ok = true;  // [h,h] ⊂ h
  bool fh_in_f_ok = true;     // [f,h] ⊂ f
  bool ff_in_h_ok = true;     // [f,f] ⊂ h
  bool reductive() const { return subalgebra_ok && fh_in_f_ok; }
  bool fully_reductive() const { return reductive() && ff_in_h_ok; }
};

/// Representation {I_a} of h on V = R^k, generators parallel to h_indices.
struct HRepresentation {
  int fibre_dim = 0;
  std::vector<Matrix> generators;
};

// --- construction and validation --------------------------------------------

/// Least-squares structure constants of a matrix basis; throws DependentBasis
/// if the flattened basis is rank-deficient and SpanViolation if a commutator
/// leaves the span by more than `tol` (absolute, scaled by commutator norm).
std::vector<Matrix> structure_constants_from_matrices(const std::vector<Matrix>& matrices,
                                                      double tol = 1e-8,
                                                      double* max_residual = nullptr);

/// Builds LieAlgebraData from matrices (computing structure constants) and
/// verifies antisymmetry, Jacobi and realization consistency to `check_tol`.
LieAlgebraData make_algebra(std::vector<Matrix> matrices,
                            std::vector<std::string> labels = {},
                            double span_tol = 1e-8, double check_tol = 1e-12);

struct AlgebraResiduals {
  double antisymmetry = 0.0;
  double jacobi = 0.0;
  double realization = 0.0;
  double max() const;
};
AlgebraResiduals algebra_residuals(const LieAlgebraData& alg);

void validate_representation(const LieAlgebraData& alg, const ReductiveSplit& split,
                             const HRepresentation& rep, double tol = 1e-12);

// --- elements and decompositions ---------------------------------------------

/// Σ_p coords[p] E_p.
Matrix element(const LieAlgebraData& alg, const Vector& coords);

/// Least-squares coordinates of M in the basis; optional residual out-param.
Vector decompose(const LieAlgebraData& alg, const Matrix& M, double* residual = nullptr);

/// As decompose, but throws SpanViolation when the residual exceeds `tol`
/// relative to max(1, ||M||).
Vector decompose_checked(const LieAlgebraData& alg, const Matrix& M, double tol = 1e-8);

/// Adjoint matrix of the basis element e_p: (ad_p)^r_s = c^r_{ps}.
Matrix ad_matrix(const LieAlgebraData& alg, int p);

/// ad of a general element Σ coords[p] e_p acting on coordinates.
Matrix ad_of(const LieAlgebraData& alg, const Vector& coords);

/// Killing form κ_{pq} = tr(ad_p ad_q).
Matrix killing_form(const LieAlgebraData& alg);

// --- exponential / adjoint ---------------------------------------------------

/// Matrix exponential (scaling-and-squaring with a Padé approximant).
Matrix matrix_exp(const Matrix& m);

/// Principal matrix logarithm; throws NoConvergence on non-finite results.
Matrix matrix_log(const Matrix& m);

/// φ1(M) = (e^M − I) M^{-1} continued through singular M, evaluated exactly
/// via one block exponential.  Used for closed-form dexp terms.
Matrix phi1(const Matrix& m);

/// Ad(g) on coordinates: g E_p g^{-1} = Ad(g)^r_p E_r, least squares with a
/// span check.
Matrix adjoint_of_group_element(const LieAlgebraData& alg, const Matrix& g,
                                double tol = 1e-8, double* residual = nullptr);

// --- reductive machinery ------------------------------------------------------

ReductiveReport check_reductive(const LieAlgebraData& alg, const ReductiveSplit& split,
                                double tol = 1e-12);

std::string describe(const ReductiveViolation& v, const LieAlgebraData& alg);

struct AdaptedSplit {
  LieAlgebraData algebra;  // adapted basis: h vectors first, complement after
  ReductiveSplit split;
  ReductiveReport report;
};

/// Splits off the Killing-orthogonal complement of the subalgebra spanned by
/// `h_indices`; throws DegenerateKilling when κ restricted to h is singular.
AdaptedSplit orthogonal_complement_split(const LieAlgebraData& alg,
                                         const std::vector<int>& h_indices,
                                         double tol = 1e-10);

}  // namespace cosetgauge
