/// @file analysis.hpp
/// @brief Continuum and discrete mode analysis: constraint-propagation
///        eigenvalues, CFL bookkeeping, convergence-order estimation, and
///        per-mode stability reporting.

#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "proca/scheme.hpp"

namespace proca {

/// Eigenvalues of the constraint-propagation pair for one wavevector:
/// +- i sqrt(p2 lambda + h.h) when the discriminant is nonnegative,
/// +- sqrt(-(p2 lambda + h.h)) real (a growing mode) otherwise.
struct ConstraintModeReport {
  std::array<double, 3> h{};
  double discriminant = 0.0;
  std::array<std::complex<double>, 2> eigenvalues{};
  bool growing = false;
};

ConstraintModeReport constraint_eigenvalues(const std::array<double, 3>& h,
                                            double p2, double lambda_value);

/// dt = cfl * min(dx over axes with n > 1) / c.
double cfl_timestep(const GridSpec& grid, double cfl, double c);

struct ConvergenceOrder {
  double order = 0.0;
  bool monotone = true;  ///< false: errors did not decrease with spacing
};

/// Observed order from (spacing, error) samples: mean of
/// log(e_i/e_j)/log(h_i/h_j) over successive spacing-sorted pairs.
/// Requires >= 2 samples with positive errors.
ConvergenceOrder convergence_order(
    std::vector<std::pair<double, double>> spacing_error);

struct ModeRadius {
  ModeIndex k{};
  std::array<double, 3> h{};  ///< continuum wavevector of the mode
  double radius = 0.0;
};

struct StabilityReport {
  std::vector<ModeRadius> modes;
  double max_radius = 0.0;
  ModeIndex argmax{};
};

/// Spectral radius of the amplification matrix for every representable
/// wavevector of the grid. Stability is measured, not asserted.
StabilityReport stability_report(SchemeKind scheme, const Params& p,
                                 double lambda_value, const GridSpec& grid);

/// Continuum wavevector of integer mode k: h_a = 2 pi m_a / (n_a dx_a)
/// with m_a the signed frequency (k_a mapped to (-n/2, n/2]).
std::array<double, 3> mode_wavevector(const GridSpec& grid, const ModeIndex& k);

}  // namespace proca
