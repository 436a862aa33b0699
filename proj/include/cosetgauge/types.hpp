#pragma once

#include <Eigen/Dense>

namespace cosetgauge {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Options threaded through every finite-difference path.
struct FdOptions {
  double step = 1e-4;
  bool richardson = false;
};

}  // namespace cosetgauge
