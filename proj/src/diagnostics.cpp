#include "proca/diagnostics.hpp"

#include <cmath>

namespace proca {

namespace {

// Loop over the interior, writing stencil-combined values.
template <typename Fn>
void for_interior(const GridSpec& g, Fn fn) {
  for (int k = 0; k < g.n3; ++k)
    for (int j = 0; j < g.n2; ++j)
      for (int i = 0; i < g.n1; ++i) fn(i, j, k);
}

}  // namespace

ScalarField constraint_c1(const ProcaState& u) { return u.pi0; }

ScalarField constraint_c2(const ProcaState& u, const Params& p) {
  ScalarField out(u.grid());
  detail::gauss_law(u, p.p2, out);
  return out;
}

ScalarField hamiltonian_density_sps(const ProcaState& u, const Params& p,
                                    const LambdaField& lambda) {
  const GridSpec& g = u.grid();
  const double lam = lambda.at(u.time);

  // dA[m][n] = d_m A^n
  ScalarField dA[3][3];
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n) dA[m][n] = diff1(u.a[n], m);
  ScalarField dA0[3] = {diff1(u.a0, 0), diff1(u.a0, 1), diff1(u.a0, 2)};

  ScalarField h(g);
  for_interior(g, [&](int i, int j, int k) {
    const double pi0 = u.pi0(i, j, k);
    const double a0 = u.a0(i, j, k);
    double val = 0.5 * lam * pi0 * pi0;
    val -= pi0 * (dA[0][0](i, j, k) + dA[1][1](i, j, k) + dA[2][2](i, j, k));
    for (int m = 0; m < 3; ++m) {
      const double pim = u.pi[m](i, j, k);
      val += 0.5 * p.p1 * pim * pim;
      val -= pim * dA0[m](i, j, k);
      val -= 0.5 * p.p2 * u.a[m](i, j, k) * u.a[m](i, j, k);
      for (int n = 0; n < 3; ++n) {
        val += (dA[m][n](i, j, k) * dA[m][n](i, j, k)) / (2.0 * p.p1);
        val -= (dA[n][m](i, j, k) * dA[m][n](i, j, k)) / (2.0 * p.p1);
      }
    }
    val += 0.5 * p.p2 * a0 * a0;
    h(i, j, k) = val;
  });
  fill_ghosts(h);
  return h;
}

ScalarField hamiltonian_density_ss(const ProcaState& u, const Params& p,
                                   const LambdaField& lambda) {
  const GridSpec& g = u.grid();
  const double lam = lambda.at(u.time);

  ScalarField dA[3][3], dpA[3][3], dmA[3][3];
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n) {
      dA[m][n] = diff1(u.a[n], m);
      dpA[m][n] = diff_fwd(u.a[n], m);
      dmA[m][n] = diff_bwd(u.a[n], m);
    }
  ScalarField dA0[3] = {diff1(u.a0, 0), diff1(u.a0, 1), diff1(u.a0, 2)};

  ScalarField h(g);
  for_interior(g, [&](int i, int j, int k) {
    const double pi0 = u.pi0(i, j, k);
    const double a0 = u.a0(i, j, k);
    double val = 0.5 * lam * pi0 * pi0;
    val -= pi0 * (dA[0][0](i, j, k) + dA[1][1](i, j, k) + dA[2][2](i, j, k));
    for (int m = 0; m < 3; ++m) {
      const double pim = u.pi[m](i, j, k);
      val += 0.5 * p.p1 * pim * pim;
      val -= pim * dA0[m](i, j, k);
      val -= 0.5 * p.p2 * u.a[m](i, j, k) * u.a[m](i, j, k);
      for (int n = 0; n < 3; ++n) {
        val += (dpA[m][n](i, j, k) * dpA[m][n](i, j, k) +
                dmA[m][n](i, j, k) * dmA[m][n](i, j, k)) /
               (4.0 * p.p1);
        val -= (dpA[n][m](i, j, k) * dpA[m][n](i, j, k) +
                dmA[n][m](i, j, k) * dmA[m][n](i, j, k)) /
               (4.0 * p.p1);
      }
    }
    val += 0.5 * p.p2 * a0 * a0;
    h(i, j, k) = val;
  });
  fill_ghosts(h);
  return h;
}

double total_hamiltonian(const ProcaState& u, const Params& p,
                         const LambdaField& lambda, SchemeKind kind) {
  const ScalarField h = kind == SchemeKind::sps
                            ? hamiltonian_density_sps(u, p, lambda)
                            : hamiltonian_density_ss(u, p, lambda);
  const GridSpec& g = u.grid();
  double acc = 0.0;
  for_interior(g, [&](int i, int j, int k) { acc += h(i, j, k); });
  return acc * g.cell_volume();
}

ScalarField residual_c1_propagation(const ProcaState& u_prev, const ProcaState& u_next,
                          const Params& p) {
  const GridSpec& g = u_prev.grid();
  const double cdt = p.c * (u_next.time - u_prev.time);
  const ScalarField c2p = constraint_c2(u_prev, p);
  const ScalarField c2n = constraint_c2(u_next, p);
  ScalarField r(g);
  for_interior(g, [&](int i, int j, int k) {
    const double lhs = (u_next.pi0(i, j, k) - u_prev.pi0(i, j, k)) / cdt;
    const double rhs = 0.5 * (c2n(i, j, k) + c2p(i, j, k));
    r(i, j, k) = lhs - rhs;
  });
  fill_ghosts(r);
  return r;
}

ScalarField residual_c2_propagation(const ProcaState& u_prev, const ProcaState& u_next,
                          const Params& p, const LambdaField& lambda) {
  const GridSpec& g = u_prev.grid();
  const double cdt = p.c * (u_next.time - u_prev.time);
  const double lam_sum = lambda.at(u_next.time) + lambda.at(u_prev.time);
  const ScalarField c2p = constraint_c2(u_prev, p);
  const ScalarField c2n = constraint_c2(u_next, p);

  ScalarField c1sum(g);
  for_interior(g, [&](int i, int j, int k) {
    c1sum(i, j, k) = u_next.pi0(i, j, k) + u_prev.pi0(i, j, k);
  });
  fill_ghosts(c1sum);

  // d_i d^i applied as composed central differences, matching the scheme.
  ScalarField lap(g);
  for (int ax = 0; ax < 3; ++ax) {
    const ScalarField t = diff1(diff1(c1sum, ax), ax);
    for_interior(g, [&](int i, int j, int k) { lap(i, j, k) += t(i, j, k); });
  }

  ScalarField r(g);
  for_interior(g, [&](int i, int j, int k) {
    const double lhs = (c2n(i, j, k) - c2p(i, j, k)) / cdt;
    const double rhs =
        -0.25 * p.p2 * lam_sum * c1sum(i, j, k) + 0.5 * lap(i, j, k);
    r(i, j, k) = lhs - rhs;
  });
  fill_ghosts(r);
  return r;
}

ScalarField ss_defect(const ProcaState& u_prev, const ProcaState& u_next,
                      const Params& p) {
  const GridSpec& g = u_prev.grid();
  ScalarField defect(g);
  for (int i_ax = 0; i_ax < 3; ++i_ax) {
    ScalarField asum(g);
    for_interior(g, [&](int i, int j, int k) {
      asum(i, j, k) = u_next.a[i_ax](i, j, k) + u_prev.a[i_ax](i, j, k);
    });
    fill_ghosts(asum);

    // d<1>_i d<2>^m_m A^i
    ScalarField lap(g);
    for (int m = 0; m < 3; ++m) {
      const ScalarField t = diff2(asum, m, m);
      for_interior(g, [&](int i, int j, int k) { lap(i, j, k) += t(i, j, k); });
    }
    fill_ghosts(lap);
    const ScalarField t_a = diff1(lap, i_ax);

    // d<1>_m d<2>^m_i A^i summed over m
    ScalarField t_b(g);
    for (int m = 0; m < 3; ++m) {
      const ScalarField t = diff1(diff2(asum, m, i_ax), m);
      for_interior(g, [&](int i, int j, int k) { t_b(i, j, k) += t(i, j, k); });
    }

    for_interior(g, [&](int i, int j, int k) {
      defect(i, j, k) += (t_b(i, j, k) - t_a(i, j, k)) / (2.0 * p.p1);
    });
  }
  fill_ghosts(defect);
  return defect;
}

double residual_energy_balance(const ProcaState& u_prev, const ProcaState& u_next,
                     const Params& p, const LambdaField& lambda,
                     SchemeKind kind) {
  const GridSpec& g = u_prev.grid();
  const double cdt = p.c * (u_next.time - u_prev.time);
  const double hc_prev = total_hamiltonian(u_prev, p, lambda, kind);
  const double hc_next = total_hamiltonian(u_next, p, lambda, kind);
  const double lhs = (hc_next - hc_prev) / cdt;

  const double dlam_rate =
      (lambda.at(u_next.time) - lambda.at(u_prev.time)) / cdt;
  double rhs = 0.0;
  if (dlam_rate != 0.0) {
    double acc = 0.0;
    for_interior(g, [&](int i, int j, int k) {
      const double c1n = u_next.pi0(i, j, k);
      const double c1p = u_prev.pi0(i, j, k);
      acc += c1n * c1n + c1p * c1p;
    });
    rhs = 0.25 * g.cell_volume() * dlam_rate * acc;
  }
  return lhs - rhs;
}

DiagnosticsRecord collect_initial(const ProcaState& u,
                                  const LinearStepSystem& sys, double hc0) {
  DiagnosticsRecord rec;
  rec.step = u.step_index;
  rec.time = u.time;
  rec.c1_l2 = l2_norm(u.pi0);
  rec.c2_l2 = l2_norm(constraint_c2(u, sys.params));
  rec.hc = total_hamiltonian(u, sys.params, sys.lambda, sys.scheme);
  rec.hc_rel_err = std::abs(hc0) < 1e-14 ? std::abs(rec.hc - hc0)
                                         : std::abs(rec.hc - hc0) / std::abs(hc0);
  rec.max_abs_a1 = linf_norm(u.a[0]);
  return rec;
}

DiagnosticsRecord collect(const ProcaState& u_prev, const ProcaState& u_next,
                          const LinearStepSystem& sys, double hc0,
                          int solver_iters) {
  DiagnosticsRecord rec = collect_initial(u_next, sys, hc0);
  rec.solver_iters = solver_iters;
  rec.c1_prop_res = linf_norm(residual_c1_propagation(u_prev, u_next, sys.params));
  rec.c2_prop_res =
      linf_norm(residual_c2_propagation(u_prev, u_next, sys.params, sys.lambda));
  rec.energy_res =
      residual_energy_balance(u_prev, u_next, sys.params, sys.lambda, sys.scheme);
  if (sys.scheme == SchemeKind::ss) {
    rec.ss_defect_l2 = l2_norm(ss_defect(u_prev, u_next, sys.params));
  }
  return rec;
}

}  // namespace proca
