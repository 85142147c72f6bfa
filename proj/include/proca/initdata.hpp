/// @file initdata.hpp
/// @brief The plane-wave initial state used by the numerical tests.

#pragma once

#include "proca/model.hpp"

namespace proca {

/// Construct the plane-wave initial state on [-1/2, 1/2)^2:
///   A^0  = -2 a pi (cos th + sin th) / S,   th = 2 pi (x + y)
///   Pi_0 = 0
///   A^1  = a cos th,  A^2 = a sin th,  A^3 = a cos(2 th)
///   Pi_1 = a (-4 pi^2 cos th + (p1 p2 - 4 pi^2) sin th) / (p1 S)
///   Pi_2 = a ( 4 pi^2 sin th + (4 pi^2 - p1 p2) cos th) / (p1 S)
///   Pi_3 = -(2 a S / p1) sin(2 th)
/// with S = sqrt(8 pi^2 - p1 p2). The momenta are built so the continuum
/// Gauss law -p2 A^0 = d_i Pi^i holds exactly; C1 vanishes identically.
/// Node-based sampling keeps the data exactly periodic on the grid.
/// Throws std::domain_error if 8 pi^2 - p1 p2 <= 0.
ProcaState plane_wave_initial_state(const GridSpec& grid, const Params& p);

struct InitialConstraintReport {
  double c1_l2 = 0.0;  ///< expected exactly 0
  double c2_l2 = 0.0;  ///< expected O(dx^2)
};

/// Constraint norms of a t = 0 state (reports, does not reject).
InitialConstraintReport verify_initial_constraints(const ProcaState& u,
                                                   const Params& p);

}  // namespace proca
