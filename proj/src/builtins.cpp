#include "cosetgauge/builtins.hpp"

namespace cosetgauge {

namespace {

double levi_civita(int p, int j, int k) {
  if (p == j || j == k || k == p) return 0.0;
  // parity of the permutation (p j k) of (0 1 2)
  int inv = (p > j) + (p > k) + (j > k);
  return (inv % 2 == 0) ? 1.0 : -1.0;
}

/// Real 4x4 embedding of the complex 2x2 matrix A + iB as [[A, -B], [B, A]].
Matrix embed_complex2(const Matrix& re, const Matrix& im) {
  Matrix m = Matrix::Zero(4, 4);
  m.topLeftCorner(2, 2) = re;
  m.topRightCorner(2, 2) = -im;
  m.bottomLeftCorner(2, 2) = im;
  m.bottomRightCorner(2, 2) = re;
  return m;
}

}  // namespace

LieAlgebraData so3_algebra() {
  std::vector<Matrix> basis;
  for (int p = 0; p < 3; ++p) {
    Matrix e = Matrix::Zero(3, 3);
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) e(j, k) = -levi_civita(p, j, k);
    basis.push_back(e);
  }
  return make_algebra(std::move(basis), {"e1", "e2", "e3"});
}

LieAlgebraData su2_algebra() {
  Matrix z2 = Matrix::Zero(2, 2);
  Matrix re(2, 2), im(2, 2);
  std::vector<Matrix> basis;
  // -(i/2) sigma_1 = [[0, -i/2], [-i/2, 0]]
  im << 0.0, -0.5, -0.5, 0.0;
  basis.push_back(embed_complex2(z2, im));
  // -(i/2) sigma_2 = [[0, -1/2], [1/2, 0]]
  re << 0.0, -0.5, 0.5, 0.0;
  basis.push_back(embed_complex2(re, z2));
  // -(i/2) sigma_3 = diag(-i/2, i/2)
  im << -0.5, 0.0, 0.0, 0.5;
  basis.push_back(embed_complex2(z2, im));
  return make_algebra(std::move(basis), {"e1", "e2", "e3"});
}

bool is_builtin_algebra(const std::string& name) { return name == "so3" || name == "su2"; }

LieAlgebraData builtin_algebra(const std::string& name) {
  if (name == "so3") return so3_algebra();
  if (name == "su2") return su2_algebra();
  throw ValidationError("unknown built-in algebra '" + name + "'");
}

Matrix rotation2d_generator() {
  Matrix i3(2, 2);
  i3 << 0.0, -1.0, 1.0, 0.0;
  return i3;
}

}  // namespace cosetgauge
