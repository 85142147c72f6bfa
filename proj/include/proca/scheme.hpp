/// @file scheme.hpp
/// @brief The two implicit Crank-Nicolson steppers (SPS and SS), the linear
///        solvers behind them, and the per-mode amplification analysis.
///
/// Both schemes advance the linear update
///     (u^{l+1} - u^l) / (c dt) = L( (u^{l+1} + u^l) / 2 )
/// where L is the spatial operator of the chosen scheme. The SPS operator
/// spells every second derivative as a composition of central differences;
/// SS replaces only the Pi_i row with second-order difference operators.

#pragma once

#include <array>
#include <complex>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "proca/model.hpp"

namespace proca {

enum class SchemeKind { sps, ss };

enum class SolverKind { spectral, iterative };

struct SolverConfig {
  SolverKind kind = SolverKind::spectral;
  double tol = 1e-12;  ///< relative residual tolerance (iterative)
  int max_iter = 10000;
};

/// The implicit linear system of one scheme: everything needed to apply L.
struct LinearStepSystem {
  SchemeKind scheme = SchemeKind::sps;
  Params params;
  LambdaField lambda;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::vector<double> history)
      : std::runtime_error(what), residual_history(std::move(history)) {}
  std::vector<double> residual_history;
};

class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Apply the spatial operator L of the chosen scheme to u, with the given
/// (spatially constant) lambda value. Linear in u; requires filled ghosts.
ProcaState apply_L(const LinearStepSystem& sys, const ProcaState& u,
                   double lambda_value);

/// Convenience overload evaluating lambda at u.time.
ProcaState apply_L(const LinearStepSystem& sys, const ProcaState& u);

/// In-place variant reusing out's storage (grids must match).
void apply_L_into(const LinearStepSystem& sys, const ProcaState& u,
                  double lambda_value, ProcaState& out);

struct StepResult {
  ProcaState state;
  int iterations = 0;      ///< linear-solver iterations (0 for spectral)
  double residual = 0.0;   ///< final relative residual (iterative only)
};

/// Advance one step of size sys.params.dt using the configured solver.
/// The implicit update uses the time-averaged lambda (lambda(t)+lambda(t+dt))/2.
/// Throws ConfigError for spectral + non-constant lambda, SolverError on
/// iterative non-convergence.
StepResult step(const ProcaState& u, const LinearStepSystem& sys,
                const SolverConfig& solver);

/// Exact mode-space solve of one implicit step. All stencils are
/// translation invariant on the periodic grid, so the DFT block-diagonalizes
/// the update into an 8x8 complex system per wavevector; the per-mode
/// Cayley matrices are precomputed once and reused every step.
/// Requires spatially-and-temporally constant lambda.
class SpectralStepper {
 public:
  SpectralStepper(const GridSpec& grid, const LinearStepSystem& sys);
  ~SpectralStepper();

  SpectralStepper(const SpectralStepper&) = delete;
  SpectralStepper& operator=(const SpectralStepper&) = delete;

  /// One Crank-Nicolson step; step_index and time advance.
  ProcaState step(const ProcaState& u) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// One-shot spectral solve (builds a stepper internally).
ProcaState solve_spectral(const LinearStepSystem& sys, const ProcaState& u);

/// Matrix-free BiCGStab on (I - (c dt/2) L) u+ = (I + (c dt/2) L) u,
/// warm-started from u. lambda_value is the time-averaged multiplier for
/// the step. Throws SolverError with the residual history on
/// non-convergence.
StepResult solve_iterative(const LinearStepSystem& sys, const ProcaState& u,
                           double lambda_value, double tol, int max_iter);

/// Row-major 8x8 complex matrix over the field ordering
/// [A0, Pi0, A1, A2, A3, Pi1, Pi2, Pi3].
using Mat8 = std::array<std::complex<double>, 64>;

/// Integer mode index (k1,k2,k3) with k_a in [0, n_a).
using ModeIndex = std::array<int, 3>;

/// Discrete symbols of the difference operators for one mode:
/// diff1 -> i*s_a with s_a = sin(theta_a)/dx_a, compact diff2 -> -q_a with
/// q_a = 2(1 - cos(theta_a))/dx_a^2, theta_a = 2 pi k_a / n_a.
struct ModeSymbols {
  std::array<double, 3> s{};
  std::array<double, 3> q{};
};

ModeSymbols mode_symbols(const GridSpec& grid, const ModeIndex& k);

/// The mode-space generator M(h): the Fourier symbol of the scheme's
/// spatial operator L.
Mat8 mode_generator(SchemeKind scheme, const Params& p, double lambda_value,
                    const ModeSymbols& sym);

/// Amplification matrix of one Crank-Nicolson step:
/// G(h) = (I - (c dt/2) M(h))^{-1} (I + (c dt/2) M(h)).
/// Throws ConfigError if the implicit factor is singular for this mode.
Mat8 amplification_matrix(SchemeKind scheme, const Params& p,
                          double lambda_value, const GridSpec& grid,
                          const ModeIndex& k);

/// Spectral radius of an 8x8 matrix (eigenvalue solve).
double spectral_radius(const Mat8& m);

namespace detail {
/// -p2 A0 - d_i Pi^i. One assembly path backs both the Pi_0 evolution row
/// and the constraint C2, so the two agree bit for bit.
void gauss_law(const ProcaState& u, double p2, ScalarField& out);
}  // namespace detail

}  // namespace proca
