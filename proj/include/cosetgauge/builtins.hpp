#pragma once

// Shipped algebras: so(3) with (E_p)_{jk} = -eps_{pjk}, and su(2) realized
// as real 4x4 blocks of -(i/2)·(Pauli matrices).  Both have c^r_{pq} = eps_{pqr}.

#include "cosetgauge/lie_algebra.hpp"

namespace cosetgauge {

LieAlgebraData so3_algebra();
LieAlgebraData su2_algebra();
bool is_builtin_algebra(const std::string& name);
LieAlgebraData builtin_algebra(const std::string& name);

/// Rotation generator [[0,-1],[1,0]] on R^2 (the u(1)-type fibre action used
/// by both shipped scenarios).
Matrix rotation2d_generator();

}  // namespace cosetgauge
