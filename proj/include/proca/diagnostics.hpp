/// @file diagnostics.hpp
/// @brief Constraints, discrete Hamiltonians, and the residuals of the
///        identities each scheme is supposed to satisfy step by step.

#pragma once

#include "proca/model.hpp"
#include "proca/scheme.hpp"

namespace proca {

/// C1 := Pi_0 (a copy of the momentum field).
ScalarField constraint_c1(const ProcaState& u);

/// C2 := -p2 A^0 - d_i Pi^i, the discrete Gauss-law violation.
ScalarField constraint_c2(const ProcaState& u, const Params& p);

/// Pointwise energy density of the SPS discretization (central-difference
/// gradient terms). lambda evaluated at u.time.
ScalarField hamiltonian_density_sps(const ProcaState& u, const Params& p,
                                    const LambdaField& lambda);

/// Pointwise energy density of the SS discretization (forward/backward
/// difference gradient terms).
ScalarField hamiltonian_density_ss(const ProcaState& u, const Params& p,
                                   const LambdaField& lambda);

/// Sum of the matching density over the interior times dV.
double total_hamiltonian(const ProcaState& u, const Params& p,
                         const LambdaField& lambda, SchemeKind kind);

/// Residual (LHS - RHS) of the discrete C1 propagation identity
///   (C1+ - C1)/(c dt) = (C2+ + C2)/2,
/// which holds for both schemes up to solver tolerance. The time step is
/// taken from the states' time difference.
ScalarField residual_c1_propagation(const ProcaState& u_prev, const ProcaState& u_next,
                          const Params& p);

/// Residual (LHS - RHS) of the discrete C2 propagation identity
///   (C2+ - C2)/(c dt) = -(p2/4)(lam+ + lam)(C1+ + C1)
///                       + (1/2) d_i d^i (C1+ + C1).
/// Near zero for SPS steps; for SS steps it equals the ss_defect field.
ScalarField residual_c2_propagation(const ProcaState& u_prev, const ProcaState& u_next,
                          const Params& p, const LambdaField& lambda);

/// The constraint-violation source the SS Pi_i update injects into the C2
/// propagation each step (the operator non-commutativity term, signed as it
/// appears on the right-hand side of the SS identity):
///   (d<1>_m d<2>^m_i - d<1>_i d<2>^m_m)(A^i+ + A^i) / (2 p1).
/// Identically zero when the A-fields depend on a single axis through a
/// single component; nonzero on generic mixed data.
ScalarField ss_defect(const ProcaState& u_prev, const ProcaState& u_next,
                      const Params& p);

/// Scalar residual of the discrete energy identity
///   (HC+ - HC)/(c dt) = sum_D (dV/4) ((lam+ - lam)/(c dt)) ((C1+)^2+(C1)^2).
/// Proven for the SPS density; for kind = ss the value is reported with no
/// conservation guarantee.
double residual_energy_balance(const ProcaState& u_prev, const ProcaState& u_next,
                     const Params& p, const LambdaField& lambda,
                     SchemeKind kind);

/// Per-step scalar diagnostics.
struct DiagnosticsRecord {
  long step = 0;
  double time = 0.0;
  double c1_l2 = 0.0;
  double c2_l2 = 0.0;
  double hc = 0.0;
  double hc_rel_err = 0.0;   ///< vs |HC(0)|; absolute if |HC(0)| < 1e-14
  double c1_prop_res = 0.0;     ///< Linf
  double c2_prop_res = 0.0;     ///< Linf
  double energy_res = 0.0;
  double ss_defect_l2 = 0.0; ///< SS runs only, 0 otherwise
  int solver_iters = 0;
  double max_abs_a1 = 0.0;
};

/// Assemble one record from a consecutive state pair. hc0 is the run's
/// t = 0 total Hamiltonian (reference for hc_rel_err).
DiagnosticsRecord collect(const ProcaState& u_prev, const ProcaState& u_next,
                          const LinearStepSystem& sys, double hc0,
                          int solver_iters);

/// Record for a standalone state (the t = 0 row: no residuals).
DiagnosticsRecord collect_initial(const ProcaState& u,
                                  const LinearStepSystem& sys, double hc0);

}  // namespace proca
