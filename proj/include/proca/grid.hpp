/// @file grid.hpp
/// @brief Periodic structured grid, ghost-cell management, and the
///        finite-difference operators shared by both time-stepping schemes.
///
/// Storage convention: one contiguous array per scalar field, axis 3
/// outermost, axis 1 fastest. Every field carries two ghost layers per
/// side; interior cells are addressed with 0-based indices i in [0, n),
/// ghosts at i = -2, -1, n, n+1. After fill_ghosts() each ghost cell is a
/// bit-exact periodic copy of its interior image, so stencils never branch
/// at the domain edge.

#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace proca {

/// Grid geometry: interior cell counts and spacings per axis.
/// The interior of axis a covers [-1/2, -1/2 + n_a*dx_a), node-sampled at
/// x = -1/2 + i*dx_a. Ghost width is fixed at 2 (the widest stencil,
/// diff1 composed with diff1, reaches +-2 cells).
struct GridSpec {
  int n1 = 1, n2 = 1, n3 = 1;
  double dx1 = 1.0, dx2 = 1.0, dx3 = 1.0;

  static constexpr int ghost_width = 2;

  /// Unit square in x,y with n3 z-planes. dz = dx when n3 > 1; a pseudo-3D
  /// plane (n3 = 1) gets unit thickness so volume-weighted norms compare
  /// across resolutions.
  static GridSpec unit_square(int n1, int n2, int n3 = 1);

  int n(int axis) const { return axis == 0 ? n1 : (axis == 1 ? n2 : n3); }
  double dx(int axis) const { return axis == 0 ? dx1 : (axis == 1 ? dx2 : dx3); }

  int ext1() const { return n1 + 2 * ghost_width; }
  int ext2() const { return n2 + 2 * ghost_width; }
  int ext3() const { return n3 + 2 * ghost_width; }

  std::size_t interior_cells() const {
    return std::size_t(n1) * std::size_t(n2) * std::size_t(n3);
  }
  std::size_t storage_cells() const {
    return std::size_t(ext1()) * std::size_t(ext2()) * std::size_t(ext3());
  }
  double cell_volume() const { return dx1 * dx2 * dx3; }

  /// Node coordinate of interior index i along an axis.
  double coord(int axis, int i) const { return -0.5 + i * dx(axis); }

  bool operator==(const GridSpec&) const = default;
};

/// One real scalar field on a GridSpec (interior plus ghosts).
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(const GridSpec& g)
      : grid_(g), v_(g.storage_cells(), 0.0) {}

  const GridSpec& grid() const { return grid_; }

  /// Interior-relative access; ghosts live at -2,-1 and n,n+1.
  double& operator()(int i, int j, int k) { return v_[index(i, j, k)]; }
  double operator()(int i, int j, int k) const { return v_[index(i, j, k)]; }

  std::size_t index(int i, int j, int k) const {
    const int g = GridSpec::ghost_width;
    return (std::size_t(k + g) * grid_.ext2() + std::size_t(j + g)) *
               grid_.ext1() +
           std::size_t(i + g);
  }

  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }
  std::size_t size() const { return v_.size(); }

 private:
  GridSpec grid_;
  std::vector<double> v_;
};

/// Copy periodic images into both ghost layers of every axis.
/// Interior values are untouched. An axis with n = 1 wraps onto its single
/// plane, which makes all derivatives along that axis vanish identically.
void fill_ghosts(ScalarField& f);

/// First-order central difference along axis (0,1,2):
/// (f[i+1] - f[i-1]) / (2 dx). Requires filled ghosts; output ghosts are
/// filled before returning.
ScalarField diff1(const ScalarField& f, int axis);

/// Forward difference (f[i+1] - f[i]) / dx.
ScalarField diff_fwd(const ScalarField& f, int axis);

/// Backward difference (f[i] - f[i-1]) / dx.
ScalarField diff_bwd(const ScalarField& f, int axis);

/// Second-order difference. For axis_i == axis_j this is the compact
/// stencil (f[i+1] - 2 f[i] + f[i-1]) / dx^2; for axis_i != axis_j it is
/// the composition diff1(diff1(f, axis_j), axis_i).
ScalarField diff2(const ScalarField& f, int axis_i, int axis_j);

/// In-place variants writing into a caller-provided output field
/// (same grid). Used on hot paths to avoid allocation churn.
void diff1_into(const ScalarField& f, int axis, ScalarField& out);
void diff_fwd_into(const ScalarField& f, int axis, ScalarField& out);
void diff_bwd_into(const ScalarField& f, int axis, ScalarField& out);

/// Volume-weighted L2 norm over the interior: sqrt(sum f^2 dV).
/// The dV weight keeps norms comparable across resolutions.
double l2_norm(const ScalarField& f);

/// Max of |f| over the interior.
double linf_norm(const ScalarField& f);

/// Interior dot product sum(f g) (unweighted; fixed loop order).
double dot_interior(const ScalarField& f, const ScalarField& g);

/// Cyclic translation of the interior by (s1,s2,s3) cells; ghosts refilled.
ScalarField shift(const ScalarField& f, int s1, int s2, int s3);

}  // namespace proca
