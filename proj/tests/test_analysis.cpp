#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>

#include "proca/analysis.hpp"

using namespace proca;

namespace {
constexpr double pi = std::numbers::pi;

// Spectral-radius oracle: normalized repeated squaring, radius =
// lim ||G^(2^m)||^(1/2^m). 32 squarings pin the radius far beyond 1e-6.
double power_radius(const Mat8& g) {
  using M = Eigen::Matrix<std::complex<double>, 8, 8>;
  M b;
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) b(r, c) = g[r * 8 + c];
  double log_r = 0.0;
  double weight = 1.0;  // 2^{-m} factor of ||B_m|| in log G^(2^m)
  for (int m = 0; m < 32; ++m) {
    const double nrm = b.norm();
    if (nrm == 0.0) return 0.0;
    log_r += weight * std::log(nrm);
    b /= nrm;
    b = (b * b).eval();
    weight *= 0.5;
  }
  log_r += weight * std::log(b.norm());
  return std::exp(log_r);
}

}  // namespace

TEST_CASE("constraint_eigenvalues: h = 0 default parameters") {
  ConstraintModeReport rep = constraint_eigenvalues({0, 0, 0}, 1.0, 0.01);
  CHECK(rep.discriminant == 0.01);
  CHECK(rep.eigenvalues[0] == std::complex<double>(0.0, 0.1));
  CHECK(rep.eigenvalues[1] == std::complex<double>(0.0, -0.1));
  CHECK_FALSE(rep.growing);
}

TEST_CASE("constraint_eigenvalues: negative discriminant flags growth") {
  ConstraintModeReport rep = constraint_eigenvalues({0, 0, 0}, 1.0, -4.0);
  CHECK(rep.discriminant == -4.0);
  CHECK(rep.eigenvalues[0] == std::complex<double>(2.0, 0.0));
  CHECK(rep.eigenvalues[1] == std::complex<double>(-2.0, 0.0));
  CHECK(rep.growing);
}

TEST_CASE("constraint_eigenvalues: cross-check against 2x2 eigensolver") {
  const std::array<double, 3> h{2 * pi, 2 * pi, 0.0};
  ConstraintModeReport rep = constraint_eigenvalues(h, 1.0, 0.01);
  const double disc = 8 * pi * pi + 0.01;
  CHECK(rep.discriminant == doctest::Approx(disc).epsilon(1e-15));
  CHECK(rep.eigenvalues[0].imag() ==
        doctest::Approx(std::sqrt(disc)).epsilon(1e-14));
  CHECK(rep.eigenvalues[0].real() == 0.0);

  Eigen::Matrix2d m;
  m << 0.0, 1.0, -disc, 0.0;
  Eigen::EigenSolver<Eigen::Matrix2d> es(m);
  double max_imag = 0.0;
  for (int i = 0; i < 2; ++i)
    max_imag = std::max(max_imag, std::abs(es.eigenvalues()[i].imag()));
  CHECK(max_imag == doctest::Approx(std::sqrt(disc)).epsilon(1e-12));
}

TEST_CASE("constraint_eigenvalues: even in h") {
  const std::array<double, 3> h{3.1, -2.2, 0.7};
  const std::array<double, 3> mh{-3.1, 2.2, -0.7};
  ConstraintModeReport a = constraint_eigenvalues(h, 1.0, 0.01);
  ConstraintModeReport b = constraint_eigenvalues(mh, 1.0, 0.01);
  CHECK(a.discriminant == b.discriminant);
  CHECK(a.eigenvalues[0] == b.eigenvalues[0]);
}

TEST_CASE("cfl_timestep") {
  GridSpec g = GridSpec::unit_square(50, 50, 1);
  CHECK(cfl_timestep(g, 0.25, 1.0) == 0.25 * g.dx1);
  CHECK(cfl_timestep(g, 0.25, 1.0) == doctest::Approx(1.0 / 200).epsilon(1e-16));
  CHECK(cfl_timestep(g, 0.125, 1.0) ==
        doctest::Approx(0.5 * cfl_timestep(g, 0.25, 1.0)).epsilon(1e-16));

  // degenerate axis never constrains dt
  GridSpec gz{50, 50, 1, 1.0 / 50, 1.0 / 50, 1e-9};
  CHECK(cfl_timestep(gz, 0.25, 1.0) == 0.25 * gz.dx1);
  // c rescales
  CHECK(cfl_timestep(g, 0.25, 2.0) ==
        doctest::Approx(0.5 * 0.25 * g.dx1).epsilon(1e-16));
  CHECK_THROWS(cfl_timestep(g, -1.0, 1.0));
}

TEST_CASE("convergence_order") {
  ConvergenceOrder o =
      convergence_order({{0.02, 1e-2}, {0.01, 2.5e-3}});
  CHECK(o.order == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(o.monotone);

  ConvergenceOrder flat = convergence_order({{0.02, 1e-2}, {0.01, 1e-2}});
  CHECK(flat.order == doctest::Approx(0.0).epsilon(1e-14));
  CHECK_FALSE(flat.monotone);

  ConvergenceOrder rising =
      convergence_order({{0.02, 1e-3}, {0.01, 2e-3}});
  CHECK_FALSE(rising.monotone);

  CHECK_THROWS(convergence_order({{0.02, 1e-2}}));
  CHECK_THROWS(convergence_order({{0.02, -1.0}, {0.01, 1.0}}));
}

TEST_CASE("stability_report: radii match the matrix-power oracle") {
  GridSpec g = GridSpec::unit_square(10, 10, 1);
  Params p;
  p.dt = 0.25 * g.dx1;
  for (SchemeKind scheme : {SchemeKind::sps, SchemeKind::ss}) {
    StabilityReport rep = stability_report(scheme, p, 0.01, g);
    REQUIRE(rep.modes.size() == 100);
    for (std::size_t m = 0; m < rep.modes.size(); m += 7) {
      const Mat8 gm =
          amplification_matrix(scheme, p, 0.01, g, rep.modes[m].k);
      CHECK(rep.modes[m].radius ==
            doctest::Approx(power_radius(gm)).epsilon(1e-6));
    }
    CHECK(rep.max_radius >= 1.0 - 1e-12);
  }
}

TEST_CASE("stability_report: Cayley modes sit on the unit circle") {
  GridSpec g = GridSpec::unit_square(16, 16, 1);
  Params p;
  p.dt = 0.25 * g.dx1;
  StabilityReport rep = stability_report(SchemeKind::sps, p, 0.01, g);
  int on_circle = 0;
  for (const ModeRadius& m : rep.modes) {
    if (std::abs(m.radius - 1.0) <= 1e-12) ++on_circle;
  }
  // every mode except the four zero-symbol corners is neutral
  CHECK(on_circle == int(rep.modes.size()) - 4);
}

TEST_CASE("mode_wavevector: signed frequencies") {
  GridSpec g = GridSpec::unit_square(8, 8, 1);
  auto h = mode_wavevector(g, {1, 7, 0});
  CHECK(h[0] == doctest::Approx(2 * pi).epsilon(1e-15));
  CHECK(h[1] == doctest::Approx(-2 * pi).epsilon(1e-15));
  CHECK(h[2] == 0.0);
}
