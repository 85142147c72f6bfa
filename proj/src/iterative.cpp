#include <cmath>
#include <vector>

#include "proca/scheme.hpp"

namespace proca {

namespace {

// Interior-only linear algebra over the 8-field bundle.
double sdot(const ProcaState& x, const ProcaState& y) {
  double acc = 0.0;
  auto xf = x.fields();
  auto yf = y.fields();
  for (int f = 0; f < 8; ++f) acc += dot_interior(*xf[f], *yf[f]);
  return acc;
}

double snorm(const ProcaState& x) { return std::sqrt(sdot(x, x)); }

// y = a*x + b*y over interiors; ghosts left stale.
void saxpby(double a, const ProcaState& x, double b, ProcaState& y) {
  const GridSpec& g = x.grid();
  auto xf = x.fields();
  auto yf = y.fields();
  for (int f = 0; f < 8; ++f) {
    const ScalarField& xs = *xf[f];
    ScalarField& ys = *yf[f];
    for (int k = 0; k < g.n3; ++k)
      for (int j = 0; j < g.n2; ++j)
        for (int i = 0; i < g.n1; ++i)
          ys(i, j, k) = a * xs(i, j, k) + b * ys(i, j, k);
  }
}

void scopy(const ProcaState& x, ProcaState& y) { y = x; }

// out = v - kappa * L(v). Fills v's ghosts first (axpy updates leave them
// stale).
struct CnOperator {
  const LinearStepSystem& sys;
  double lambda_value;
  double kappa;
  mutable ProcaState scratch;

  explicit CnOperator(const LinearStepSystem& s, double lam, double kap,
                      const GridSpec& g)
      : sys(s), lambda_value(lam), kappa(kap), scratch(g) {}

  void apply(ProcaState& v, ProcaState& out) const {
    v.fill_all_ghosts();
    apply_L_into(sys, v, lambda_value, scratch);
    scopy(v, out);
    saxpby(-kappa, scratch, 1.0, out);
  }
};

}  // namespace

StepResult solve_iterative(const LinearStepSystem& sys, const ProcaState& u,
                           double lambda_value, double tol, int max_iter) {
  const GridSpec& g = u.grid();
  const double kappa = 0.5 * sys.params.c * sys.params.dt;
  CnOperator op(sys, lambda_value, kappa, g);

  // b = u + kappa L(u)
  ProcaState b(g);
  {
    ProcaState lu_(g);
    ProcaState uc = u;
    uc.fill_all_ghosts();
    apply_L_into(sys, uc, lambda_value, lu_);
    scopy(uc, b);
    saxpby(kappa, lu_, 1.0, b);
  }

  const double bnorm = snorm(b);
  StepResult result;
  result.state = ProcaState(g);
  result.state.step_index = u.step_index + 1;
  result.state.time = u.time + sys.params.dt;
  if (bnorm == 0.0) {
    // Zero right-hand side: the zero state is the exact solution.
    result.iterations = 0;
    result.residual = 0.0;
    return result;
  }

  // BiCGStab, warm-started from the previous state.
  ProcaState x = u;
  ProcaState r(g), rhat(g), p(g), v(g), s(g), t(g);
  op.apply(x, r);                 // r = T x
  saxpby(1.0, b, -1.0, r);        // r = b - T x
  scopy(r, rhat);
  double rho = 1.0, alpha = 1.0, omega = 1.0;

  std::vector<double> history;
  double rel = snorm(r) / bnorm;
  history.push_back(rel);

  int it = 0;
  while (rel > tol && it < max_iter) {
    ++it;
    const double rho_new = sdot(rhat, r);
    if (rho_new == 0.0) {
      throw SolverError("BiCGStab breakdown (rho = 0)", history);
    }
    if (it == 1) {
      scopy(r, p);
    } else {
      const double beta = (rho_new / rho) * (alpha / omega);
      // p = r + beta (p - omega v)
      saxpby(-omega, v, 1.0, p);
      saxpby(1.0, r, beta, p);
    }
    rho = rho_new;
    op.apply(p, v);
    const double rhat_v = sdot(rhat, v);
    if (rhat_v == 0.0) {
      throw SolverError("BiCGStab breakdown (rhat.v = 0)", history);
    }
    alpha = rho / rhat_v;
    scopy(r, s);
    saxpby(-alpha, v, 1.0, s);
    if (snorm(s) / bnorm <= tol) {
      saxpby(alpha, p, 1.0, x);
      rel = snorm(s) / bnorm;
      history.push_back(rel);
      break;
    }
    op.apply(s, t);
    const double tt = sdot(t, t);
    if (tt == 0.0) {
      throw SolverError("BiCGStab breakdown (t.t = 0)", history);
    }
    omega = sdot(t, s) / tt;
    saxpby(alpha, p, 1.0, x);
    saxpby(omega, s, 1.0, x);
    scopy(s, r);
    saxpby(-omega, t, 1.0, r);
    rel = snorm(r) / bnorm;
    history.push_back(rel);
    if (omega == 0.0) {
      throw SolverError("BiCGStab breakdown (omega = 0)", history);
    }
  }

  if (rel > tol) {
    throw SolverError("BiCGStab did not converge in " +
                          std::to_string(max_iter) + " iterations (residual " +
                          std::to_string(rel) + ")",
                      history);
  }

  x.fill_all_ghosts();
  x.step_index = u.step_index + 1;
  x.time = u.time + sys.params.dt;
  result.state = std::move(x);
  result.iterations = it;
  result.residual = rel;
  return result;
}

}  // namespace proca
