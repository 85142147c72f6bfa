#include "proca/scheme.hpp"

#include <cmath>
#include <numbers>

namespace proca {

namespace {

// out = -p2 * a0 - sum_i diff1(pi[i], i). This single assembly backs both
// the Pi_0 evolution row and the C2 constraint so the two agree bit for bit.
void gauss_law_into(const ProcaState& u, double p2, ScalarField& out) {
  const GridSpec& g = u.grid();
  ScalarField d1 = diff1(u.pi[0], 0);
  ScalarField d2 = diff1(u.pi[1], 1);
  ScalarField d3 = diff1(u.pi[2], 2);
  if (!(out.grid() == g)) out = ScalarField(g);
  for (int k = 0; k < g.n3; ++k)
    for (int j = 0; j < g.n2; ++j)
      for (int i = 0; i < g.n1; ++i)
        out(i, j, k) =
            -p2 * u.a0(i, j, k) - d1(i, j, k) - d2(i, j, k) - d3(i, j, k);
  fill_ghosts(out);
}

}  // namespace

namespace detail {
void gauss_law(const ProcaState& u, double p2, ScalarField& out) {
  gauss_law_into(u, p2, out);
}
}  // namespace detail

void apply_L_into(const LinearStepSystem& sys, const ProcaState& u,
                  double lambda_value, ProcaState& out) {
  const Params& p = sys.params;
  const GridSpec& g = u.grid();
  if (!(out.grid() == g)) out = ProcaState(g);
  out.step_index = u.step_index;
  out.time = u.time;

  ScalarField da[3] = {diff1(u.a[0], 0), diff1(u.a[1], 1), diff1(u.a[2], 2)};

  // A0 row: lambda Pi0 - d_i A^i
  for (int k = 0; k < g.n3; ++k)
    for (int j = 0; j < g.n2; ++j)
      for (int i = 0; i < g.n1; ++i)
        out.a0(i, j, k) = lambda_value * u.pi0(i, j, k) - da[0](i, j, k) -
                          da[1](i, j, k) - da[2](i, j, k);
  fill_ghosts(out.a0);

  // Pi0 row: -p2 A0 - d_i Pi^i (the Gauss-law expression)
  gauss_law_into(u, p.p2, out.pi0);

  // A^i rows: p1 Pi^i - d^i A0
  for (int ax = 0; ax < 3; ++ax) {
    ScalarField da0 = diff1(u.a0, ax);
    for (int k = 0; k < g.n3; ++k)
      for (int j = 0; j < g.n2; ++j)
        for (int i = 0; i < g.n1; ++i)
          out.a[ax](i, j, k) = p.p1 * u.pi[ax](i, j, k) - da0(i, j, k);
    fill_ghosts(out.a[ax]);
  }

  // Pi_i rows: p2 A_i - d_i Pi0 + second-derivative block / p1.
  // SPS spells both second derivatives as diff1 compositions; SS uses the
  // second-order operator (compact on the diagonal).
  ScalarField div_a(g);
  if (sys.scheme == SchemeKind::sps) {
    for (int k = 0; k < g.n3; ++k)
      for (int j = 0; j < g.n2; ++j)
        for (int i = 0; i < g.n1; ++i)
          div_a(i, j, k) = da[0](i, j, k) + da[1](i, j, k) + da[2](i, j, k);
    fill_ghosts(div_a);
  }

  for (int ax = 0; ax < 3; ++ax) {
    ScalarField dpi0 = diff1(u.pi0, ax);
    ScalarField second(g);
    if (sys.scheme == SchemeKind::sps) {
      // d_m d^m A_i - d_i d_m A^m, all wide
      ScalarField lap(g);
      for (int m = 0; m < 3; ++m) {
        ScalarField t = diff1(diff1(u.a[ax], m), m);
        for (int k = 0; k < g.n3; ++k)
          for (int j = 0; j < g.n2; ++j)
            for (int i = 0; i < g.n1; ++i) lap(i, j, k) += t(i, j, k);
      }
      ScalarField graddiv = diff1(div_a, ax);
      for (int k = 0; k < g.n3; ++k)
        for (int j = 0; j < g.n2; ++j)
          for (int i = 0; i < g.n1; ++i)
            second(i, j, k) = lap(i, j, k) - graddiv(i, j, k);
    } else {
      // delta<2>^m_m A_i - delta<2>_im A^m
      for (int m = 0; m < 3; ++m) {
        ScalarField t1 = diff2(u.a[ax], m, m);
        ScalarField t2 = diff2(u.a[m], ax, m);
        for (int k = 0; k < g.n3; ++k)
          for (int j = 0; j < g.n2; ++j)
            for (int i = 0; i < g.n1; ++i)
              second(i, j, k) += t1(i, j, k) - t2(i, j, k);
      }
    }
    const double inv_p1 = 1.0 / p.p1;
    for (int k = 0; k < g.n3; ++k)
      for (int j = 0; j < g.n2; ++j)
        for (int i = 0; i < g.n1; ++i)
          out.pi[ax](i, j, k) = p.p2 * u.a[ax](i, j, k) - dpi0(i, j, k) +
                                inv_p1 * second(i, j, k);
    fill_ghosts(out.pi[ax]);
  }
}

ProcaState apply_L(const LinearStepSystem& sys, const ProcaState& u,
                   double lambda_value) {
  ProcaState out(u.grid());
  apply_L_into(sys, u, lambda_value, out);
  return out;
}

ProcaState apply_L(const LinearStepSystem& sys, const ProcaState& u) {
  return apply_L(sys, u, sys.lambda.at(u.time));
}

StepResult step(const ProcaState& u, const LinearStepSystem& sys,
                const SolverConfig& solver) {
  sys.params.validate();
  if (sys.params.dt == 0.0) {
    throw ConfigError("step: params.dt must be nonzero");
  }
  if (solver.kind == SolverKind::spectral) {
    if (!sys.lambda.is_constant()) {
      throw ConfigError("spectral solver requires spatially constant lambda");
    }
    StepResult r;
    r.state = solve_spectral(sys, u);
    return r;
  }
  const double t0 = u.time;
  const double lam_bar =
      0.5 * (sys.lambda.at(t0) + sys.lambda.at(t0 + sys.params.dt));
  return solve_iterative(sys, u, lam_bar, solver.tol, solver.max_iter);
}

ModeSymbols mode_symbols(const GridSpec& grid, const ModeIndex& k) {
  ModeSymbols sym;
  for (int a = 0; a < 3; ++a) {
    const int n = grid.n(a);
    const double dx = grid.dx(a);
    const double theta = 2.0 * std::numbers::pi * k[a] / n;
    sym.s[a] = std::sin(theta) / dx;
    sym.q[a] = 2.0 * (1.0 - std::cos(theta)) / (dx * dx);
  }
  return sym;
}

Mat8 mode_generator(SchemeKind scheme, const Params& p, double lambda_value,
                    const ModeSymbols& sym) {
  using cd = std::complex<double>;
  Mat8 m{};
  auto at = [&m](int r, int c) -> cd& { return m[r * 8 + c]; };
  const auto& s = sym.s;
  const auto& q = sym.q;
  const double s2 = s[0] * s[0] + s[1] * s[1] + s[2] * s[2];
  const double qq = q[0] + q[1] + q[2];

  at(0, 1) = lambda_value;
  at(1, 0) = -p.p2;
  for (int a = 0; a < 3; ++a) {
    at(0, 2 + a) = cd(0.0, -s[a]);
    at(1, 5 + a) = cd(0.0, -s[a]);
    at(2 + a, 0) = cd(0.0, -s[a]);
    at(2 + a, 5 + a) = p.p1;
    at(5 + a, 1) = cd(0.0, -s[a]);
    at(5 + a, 2 + a) += p.p2;
    if (scheme == SchemeKind::sps) {
      at(5 + a, 2 + a) += (-s2 + s[a] * s[a]) / p.p1;
    } else {
      at(5 + a, 2 + a) += -(qq - q[a]) / p.p1;
    }
    for (int mm = 0; mm < 3; ++mm) {
      if (mm != a) at(5 + a, 2 + mm) += s[a] * s[mm] / p.p1;
    }
  }
  return m;
}

}  // namespace proca
