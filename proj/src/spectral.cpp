#include <fftw3.h>

#include <Eigen/Dense>

#include <complex>
#include <cstring>
#include <string>
#include <vector>

#include "proca/scheme.hpp"

namespace proca {

namespace {

using cd = std::complex<double>;
using Matrix8cd = Eigen::Matrix<cd, 8, 8>;

Matrix8cd to_eigen(const Mat8& m) {
  Matrix8cd e;
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) e(r, c) = m[r * 8 + c];
  return e;
}

Mat8 from_eigen(const Matrix8cd& e) {
  Mat8 m;
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) m[r * 8 + c] = e(r, c);
  return m;
}

/// Cayley matrix of one mode; throws ConfigError on a singular implicit
/// factor, reporting the mode.
Matrix8cd cayley_matrix(SchemeKind scheme, const Params& p, double lambda_value,
                        const GridSpec& grid, const ModeIndex& k) {
  const Mat8 gen = mode_generator(scheme, p, lambda_value, mode_symbols(grid, k));
  const Matrix8cd m = to_eigen(gen);
  const double kappa = 0.5 * p.c * p.dt;
  const Matrix8cd a = Matrix8cd::Identity() - kappa * m;
  const Matrix8cd b = Matrix8cd::Identity() + kappa * m;
  Eigen::FullPivLU<Matrix8cd> lu(a);
  if (!lu.isInvertible()) {
    throw ConfigError("singular implicit system at mode (" +
                      std::to_string(k[0]) + "," + std::to_string(k[1]) + "," +
                      std::to_string(k[2]) + ")");
  }
  return lu.solve(b);
}

}  // namespace

Mat8 amplification_matrix(SchemeKind scheme, const Params& p,
                          double lambda_value, const GridSpec& grid,
                          const ModeIndex& k) {
  return from_eigen(cayley_matrix(scheme, p, lambda_value, grid, k));
}

double spectral_radius(const Mat8& m) {
  Eigen::ComplexEigenSolver<Matrix8cd> es(to_eigen(m), false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

struct SpectralStepper::Impl {
  GridSpec grid;
  Params params;
  double dt;
  std::size_t n_cells;
  int n1h;
  std::size_t n_modes;

  std::vector<cd> gmat;  // n_modes * 64, row-major per mode

  double* real_buf = nullptr;
  fftw_complex* cplx_buf[8] = {};
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  Impl(const GridSpec& g, const LinearStepSystem& sys)
      : grid(g), params(sys.params), dt(sys.params.dt) {
    n_cells = g.interior_cells();
    n1h = g.n1 / 2 + 1;
    n_modes = std::size_t(g.n3) * g.n2 * n1h;

    gmat.resize(n_modes * 64);
    const double lam = sys.lambda.at(0.0);
    std::size_t idx = 0;
    for (int k3 = 0; k3 < g.n3; ++k3) {
      for (int k2 = 0; k2 < g.n2; ++k2) {
        for (int k1 = 0; k1 < n1h; ++k1, ++idx) {
          const Matrix8cd gm =
              cayley_matrix(sys.scheme, params, lam, g, {k1, k2, k3});
          for (int r = 0; r < 8; ++r)
            for (int c = 0; c < 8; ++c) gmat[idx * 64 + r * 8 + c] = gm(r, c);
        }
      }
    }

    real_buf = fftw_alloc_real(n_cells);
    for (int f = 0; f < 8; ++f) cplx_buf[f] = fftw_alloc_complex(n_modes);
    // Row-major dims (n3, n2, n1): n1 fastest, matching field storage.
    const int dims[3] = {g.n3, g.n2, g.n1};
    // FFTW_ESTIMATE keeps plan selection deterministic run to run.
    fwd = fftw_plan_dft_r2c(3, dims, real_buf, cplx_buf[0], FFTW_ESTIMATE);
    bwd = fftw_plan_dft_c2r(3, dims, cplx_buf[0], real_buf, FFTW_ESTIMATE);
  }

  ~Impl() {
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
    fftw_free(real_buf);
    for (int f = 0; f < 8; ++f) fftw_free(cplx_buf[f]);
  }

  void gather(const ScalarField& f) {
    const GridSpec& g = grid;
    std::size_t m = 0;
    for (int k = 0; k < g.n3; ++k)
      for (int j = 0; j < g.n2; ++j)
        for (int i = 0; i < g.n1; ++i) real_buf[m++] = f(i, j, k);
  }

  void scatter(ScalarField& f, double scale) {
    const GridSpec& g = grid;
    std::size_t m = 0;
    for (int k = 0; k < g.n3; ++k)
      for (int j = 0; j < g.n2; ++j)
        for (int i = 0; i < g.n1; ++i) f(i, j, k) = real_buf[m++] * scale;
  }

  ProcaState do_step(const ProcaState& u) {
    ProcaState out(grid);
    const ScalarField* in_f[8];
    {
      auto fs = u.fields();
      for (int f = 0; f < 8; ++f) in_f[f] = fs[f];
    }
    for (int f = 0; f < 8; ++f) {
      gather(*in_f[f]);
      fftw_execute_dft_r2c(fwd, real_buf, cplx_buf[f]);
    }

    // Per mode: u_hat <- G(h) u_hat
    for (std::size_t m = 0; m < n_modes; ++m) {
      cd in[8], res[8];
      for (int f = 0; f < 8; ++f)
        in[f] = cd(cplx_buf[f][m][0], cplx_buf[f][m][1]);
      const cd* gm = &gmat[m * 64];
      for (int r = 0; r < 8; ++r) {
        cd acc(0.0, 0.0);
        for (int c = 0; c < 8; ++c) acc += gm[r * 8 + c] * in[c];
        res[r] = acc;
      }
      for (int f = 0; f < 8; ++f) {
        cplx_buf[f][m][0] = res[f].real();
        cplx_buf[f][m][1] = res[f].imag();
      }
    }

    const double scale = 1.0 / double(n_cells);
    auto out_fields = out.fields();
    for (int f = 0; f < 8; ++f) {
      fftw_execute_dft_c2r(bwd, cplx_buf[f], real_buf);
      scatter(*out_fields[f], scale);
      fill_ghosts(*out_fields[f]);
    }
    out.step_index = u.step_index + 1;
    out.time = u.time + dt;
    return out;
  }
};

SpectralStepper::SpectralStepper(const GridSpec& grid,
                                 const LinearStepSystem& sys) {
  sys.params.validate();
  if (sys.params.dt == 0.0) {
    throw ConfigError("SpectralStepper: params.dt must be nonzero");
  }
  if (!sys.lambda.is_constant()) {
    throw ConfigError("spectral solver requires constant lambda");
  }
  impl_ = std::make_unique<Impl>(grid, sys);
}

SpectralStepper::~SpectralStepper() = default;

ProcaState SpectralStepper::step(const ProcaState& u) const {
  return impl_->do_step(u);
}

ProcaState solve_spectral(const LinearStepSystem& sys, const ProcaState& u) {
  SpectralStepper s(u.grid(), sys);
  return s.step(u);
}

}  // namespace proca
