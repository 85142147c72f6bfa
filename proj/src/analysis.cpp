#include "proca/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace proca {

ConstraintModeReport constraint_eigenvalues(const std::array<double, 3>& h,
                                            double p2, double lambda_value) {
  ConstraintModeReport rep;
  rep.h = h;
  rep.discriminant = p2 * lambda_value + h[0] * h[0] + h[1] * h[1] + h[2] * h[2];
  if (rep.discriminant >= 0.0) {
    const double w = std::sqrt(rep.discriminant);
    rep.eigenvalues = {std::complex<double>(0.0, w),
                       std::complex<double>(0.0, -w)};
    rep.growing = false;
  } else {
    const double w = std::sqrt(-rep.discriminant);
    rep.eigenvalues = {std::complex<double>(w, 0.0),
                       std::complex<double>(-w, 0.0)};
    rep.growing = true;
  }
  return rep;
}

double cfl_timestep(const GridSpec& grid, double cfl, double c) {
  if (cfl <= 0.0) throw std::invalid_argument("cfl_timestep: cfl must be > 0");
  double mindx = 0.0;
  bool found = false;
  for (int a = 0; a < 3; ++a) {
    if (grid.n(a) > 1) {
      mindx = found ? std::min(mindx, grid.dx(a)) : grid.dx(a);
      found = true;
    }
  }
  if (!found) {
    throw std::invalid_argument("cfl_timestep: no axis with n > 1");
  }
  return cfl * mindx / c;
}

ConvergenceOrder convergence_order(
    std::vector<std::pair<double, double>> spacing_error) {
  if (spacing_error.size() < 2) {
    throw std::invalid_argument("convergence_order: need >= 2 samples");
  }
  for (const auto& [h, e] : spacing_error) {
    if (h <= 0.0 || e <= 0.0) {
      throw std::invalid_argument(
          "convergence_order: spacings and errors must be positive");
    }
  }
  std::sort(spacing_error.begin(), spacing_error.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  ConvergenceOrder result;
  double acc = 0.0;
  int count = 0;
  for (std::size_t i = 0; i + 1 < spacing_error.size(); ++i) {
    const auto& [h1, e1] = spacing_error[i];
    const auto& [h2, e2] = spacing_error[i + 1];
    acc += std::log(e1 / e2) / std::log(h1 / h2);
    ++count;
    if (e2 >= e1) result.monotone = false;
  }
  result.order = acc / count;
  return result;
}

std::array<double, 3> mode_wavevector(const GridSpec& grid,
                                      const ModeIndex& k) {
  std::array<double, 3> h{};
  for (int a = 0; a < 3; ++a) {
    const int n = grid.n(a);
    int m = k[a];
    if (m > n / 2) m -= n;  // signed frequency
    h[a] = 2.0 * std::numbers::pi * m / (n * grid.dx(a));
  }
  return h;
}

StabilityReport stability_report(SchemeKind scheme, const Params& p,
                                 double lambda_value, const GridSpec& grid) {
  StabilityReport rep;
  rep.modes.reserve(grid.interior_cells());
  for (int k3 = 0; k3 < grid.n3; ++k3) {
    for (int k2 = 0; k2 < grid.n2; ++k2) {
      for (int k1 = 0; k1 < grid.n1; ++k1) {
        const ModeIndex k{k1, k2, k3};
        const Mat8 g = amplification_matrix(scheme, p, lambda_value, grid, k);
        ModeRadius mr;
        mr.k = k;
        mr.h = mode_wavevector(grid, k);
        mr.radius = spectral_radius(g);
        if (mr.radius > rep.max_radius) {
          rep.max_radius = mr.radius;
          rep.argmax = k;
        }
        rep.modes.push_back(mr);
      }
    }
  }
  return rep;
}

}  // namespace proca
