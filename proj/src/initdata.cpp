#include "proca/initdata.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "proca/diagnostics.hpp"

namespace proca {

ProcaState plane_wave_initial_state(const GridSpec& grid, const Params& p) {
  constexpr double pi = std::numbers::pi;
  const double arg = 8.0 * pi * pi - p.p1 * p.p2;
  if (arg <= 0.0) {
    throw std::domain_error(
        "plane_wave_initial_state: 8 pi^2 - p1 p2 must be positive");
  }
  const double S = std::sqrt(arg);
  const double a = p.a;

  ProcaState u(grid);
  for (int k = 0; k < grid.n3; ++k) {
    for (int j = 0; j < grid.n2; ++j) {
      const double y = grid.coord(1, j);
      for (int i = 0; i < grid.n1; ++i) {
        const double x = grid.coord(0, i);
        const double th = 2.0 * pi * (x + y);
        const double ph = 4.0 * pi * (x + y);
        const double ct = std::cos(th), st = std::sin(th);
        u.a0(i, j, k) = -2.0 * a * pi * (ct + st) / S;
        u.pi0(i, j, k) = 0.0;
        u.a[0](i, j, k) = a * ct;
        u.a[1](i, j, k) = a * st;
        u.a[2](i, j, k) = a * std::cos(ph);
        u.pi[0](i, j, k) =
            (-4.0 * a * pi * pi * ct + a * (p.p1 * p.p2 - 4.0 * pi * pi) * st) /
            (p.p1 * S);
        u.pi[1](i, j, k) =
            (4.0 * a * pi * pi * st + a * (4.0 * pi * pi - p.p1 * p.p2) * ct) /
            (p.p1 * S);
        u.pi[2](i, j, k) = -(2.0 * a * S / p.p1) * std::sin(ph);
      }
    }
  }
  u.fill_all_ghosts();
  u.step_index = 0;
  u.time = 0.0;
  return u;
}

InitialConstraintReport verify_initial_constraints(const ProcaState& u,
                                                   const Params& p) {
  InitialConstraintReport rep;
  rep.c1_l2 = l2_norm(u.pi0);
  rep.c2_l2 = l2_norm(constraint_c2(u, p));
  return rep;
}

}  // namespace proca
