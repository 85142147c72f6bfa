#include "proca/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace proca {

GridSpec GridSpec::unit_square(int n1, int n2, int n3) {
  if (n1 < 1 || n2 < 1 || n3 < 1) {
    throw std::invalid_argument("GridSpec: cell counts must be positive");
  }
  GridSpec g;
  g.n1 = n1;
  g.n2 = n2;
  g.n3 = n3;
  g.dx1 = 1.0 / n1;
  g.dx2 = 1.0 / n2;
  // dz = dx for a true 3-D grid; a pseudo-3D plane (n3 = 1) gets unit
  // thickness so norms stay comparable across resolutions.
  g.dx3 = n3 > 1 ? g.dx1 : 1.0;
  return g;
}

namespace {

inline int wrap(int i, int n) {
  int r = i % n;
  return r < 0 ? r + n : r;
}

}  // namespace

void fill_ghosts(ScalarField& f) {
  const GridSpec& g = f.grid();
  const int gw = GridSpec::ghost_width;
  // Axis 1, then 2, then 3; later passes copy already-filled ghost rows so
  // that corner ghosts end up consistent.
  for (int k = 0; k < g.n3; ++k) {
    for (int j = 0; j < g.n2; ++j) {
      for (int s = 1; s <= gw; ++s) {
        f(-s, j, k) = f(wrap(g.n1 - s, g.n1), j, k);
        f(g.n1 - 1 + s, j, k) = f(wrap(s - 1, g.n1), j, k);
      }
    }
  }
  for (int k = 0; k < g.n3; ++k) {
    for (int s = 1; s <= gw; ++s) {
      for (int i = -gw; i < g.n1 + gw; ++i) {
        f(i, -s, k) = f(i, wrap(g.n2 - s, g.n2), k);
        f(i, g.n2 - 1 + s, k) = f(i, wrap(s - 1, g.n2), k);
      }
    }
  }
  for (int s = 1; s <= gw; ++s) {
    for (int j = -gw; j < g.n2 + gw; ++j) {
      for (int i = -gw; i < g.n1 + gw; ++i) {
        f(i, j, -s) = f(i, j, wrap(g.n3 - s, g.n3));
        f(i, j, g.n3 - 1 + s) = f(i, j, wrap(s - 1, g.n3));
      }
    }
  }
}

namespace {

template <typename Stencil>
void apply_axis_stencil(const ScalarField& f, int axis, ScalarField& out,
                        Stencil stencil) {
  const GridSpec& g = f.grid();
  if (!(out.grid() == g)) {
    out = ScalarField(g);
  }
  const int di = axis == 0 ? 1 : 0;
  const int dj = axis == 1 ? 1 : 0;
  const int dk = axis == 2 ? 1 : 0;
  for (int k = 0; k < g.n3; ++k) {
    for (int j = 0; j < g.n2; ++j) {
      for (int i = 0; i < g.n1; ++i) {
        out(i, j, k) = stencil(f(i - di, j - dj, k - dk), f(i, j, k),
                               f(i + di, j + dj, k + dk));
      }
    }
  }
  fill_ghosts(out);
}

}  // namespace

void diff1_into(const ScalarField& f, int axis, ScalarField& out) {
  const double inv2dx = 1.0 / (2.0 * f.grid().dx(axis));
  apply_axis_stencil(f, axis, out, [inv2dx](double fm, double, double fp) {
    return (fp - fm) * inv2dx;
  });
}

void diff_fwd_into(const ScalarField& f, int axis, ScalarField& out) {
  const double invdx = 1.0 / f.grid().dx(axis);
  apply_axis_stencil(f, axis, out, [invdx](double, double f0, double fp) {
    return (fp - f0) * invdx;
  });
}

void diff_bwd_into(const ScalarField& f, int axis, ScalarField& out) {
  const double invdx = 1.0 / f.grid().dx(axis);
  apply_axis_stencil(f, axis, out, [invdx](double fm, double f0, double) {
    return (f0 - fm) * invdx;
  });
}

ScalarField diff1(const ScalarField& f, int axis) {
  ScalarField out(f.grid());
  diff1_into(f, axis, out);
  return out;
}

ScalarField diff_fwd(const ScalarField& f, int axis) {
  ScalarField out(f.grid());
  diff_fwd_into(f, axis, out);
  return out;
}

ScalarField diff_bwd(const ScalarField& f, int axis) {
  ScalarField out(f.grid());
  diff_bwd_into(f, axis, out);
  return out;
}

ScalarField diff2(const ScalarField& f, int axis_i, int axis_j) {
  if (axis_i != axis_j) {
    return diff1(diff1(f, axis_j), axis_i);
  }
  ScalarField out(f.grid());
  const double invdx2 = 1.0 / (f.grid().dx(axis_i) * f.grid().dx(axis_i));
  apply_axis_stencil(f, axis_i, out, [invdx2](double fm, double f0, double fp) {
    return (fp - 2.0 * f0 + fm) * invdx2;
  });
  return out;
}

double l2_norm(const ScalarField& f) {
  const GridSpec& g = f.grid();
  double acc = 0.0;
  for (int k = 0; k < g.n3; ++k) {
    for (int j = 0; j < g.n2; ++j) {
      for (int i = 0; i < g.n1; ++i) {
        acc += f(i, j, k) * f(i, j, k);
      }
    }
  }
  return std::sqrt(acc * g.cell_volume());
}

double linf_norm(const ScalarField& f) {
  const GridSpec& g = f.grid();
  double m = 0.0;
  for (int k = 0; k < g.n3; ++k) {
    for (int j = 0; j < g.n2; ++j) {
      for (int i = 0; i < g.n1; ++i) {
        m = std::max(m, std::abs(f(i, j, k)));
      }
    }
  }
  return m;
}

double dot_interior(const ScalarField& f, const ScalarField& g) {
  const GridSpec& gs = f.grid();
  double acc = 0.0;
  for (int k = 0; k < gs.n3; ++k) {
    for (int j = 0; j < gs.n2; ++j) {
      for (int i = 0; i < gs.n1; ++i) {
        acc += f(i, j, k) * g(i, j, k);
      }
    }
  }
  return acc;
}

ScalarField shift(const ScalarField& f, int s1, int s2, int s3) {
  const GridSpec& g = f.grid();
  ScalarField out(g);
  for (int k = 0; k < g.n3; ++k) {
    for (int j = 0; j < g.n2; ++j) {
      for (int i = 0; i < g.n1; ++i) {
        out(i, j, k) =
            f(wrap(i - s1, g.n1), wrap(j - s2, g.n2), wrap(k - s3, g.n3));
      }
    }
  }
  fill_ghosts(out);
  return out;
}

}  // namespace proca
