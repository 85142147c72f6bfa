/// @file model.hpp
/// @brief Physical parameters, the gauge multiplier, and the 8-field state.

#pragma once

#include <array>
#include <functional>
#include <stdexcept>

#include "proca/grid.hpp"

namespace proca {

/// Physical and gauge constants. p2 = c^2 m^2 / hbar^2 when modeling a
/// physical mass. dt is the time step in t units (the schemes advance by
/// c*dt in x^0 = c t).
struct Params {
  double c = 1.0;
  double p1 = 1.0;
  double p2 = 1.0;
  double lambda0 = 0.01;
  double dt = 0.0;
  double a = 1.0;  ///< initial-data amplitude

  void validate() const {
    if (c <= 0.0) throw std::invalid_argument("Params: c must be positive");
    if (p1 == 0.0) throw std::invalid_argument("Params: p1 must be nonzero");
    if (lambda0 == 0.0)
      throw std::invalid_argument("Params: lambda0 must be nonzero");
  }
};

/// Gauge multiplier lambda. Either a global constant or a prescribed
/// function of time (spatially constant in both cases; a space-dependent
/// gauge field is outside this model's scope).
class LambdaField {
 public:
  LambdaField() = default;

  static LambdaField constant(double value) {
    if (value == 0.0)
      throw std::invalid_argument("LambdaField: value must be nonzero");
    LambdaField l;
    l.value_ = value;
    return l;
  }

  /// lambda(t) = value0 + rate * t. Used to exercise the gauge term in the
  /// discrete energy identity; disables the spectral solver.
  static LambdaField linear_in_time(double value0, double rate) {
    LambdaField l;
    l.value_ = value0;
    l.fn_ = [value0, rate](double t) { return value0 + rate * t; };
    return l;
  }

  static LambdaField prescribed(std::function<double(double)> fn) {
    LambdaField l;
    l.value_ = 0.0;
    l.fn_ = std::move(fn);
    return l;
  }

  bool is_constant() const { return !fn_; }

  double at(double t) const { return fn_ ? fn_(t) : value_; }

 private:
  double value_ = 0.01;
  std::function<double(double)> fn_;
};

/// The 8 dynamical fields (A^0, Pi_0, A^i, Pi_i) at one time level.
/// Spatial index raising/lowering is the identity (flat spatial metric), so
/// A^i and A_i share storage. Value-semantic: deep-copyable, no sharing.
struct ProcaState {
  ScalarField a0, pi0;
  std::array<ScalarField, 3> a;
  std::array<ScalarField, 3> pi;
  long step_index = 0;
  double time = 0.0;

  ProcaState() = default;
  explicit ProcaState(const GridSpec& g)
      : a0(g), pi0(g), a{ScalarField(g), ScalarField(g), ScalarField(g)},
        pi{ScalarField(g), ScalarField(g), ScalarField(g)} {}

  const GridSpec& grid() const { return a0.grid(); }

  std::array<ScalarField*, 8> fields() {
    return {&a0, &pi0, &a[0], &a[1], &a[2], &pi[0], &pi[1], &pi[2]};
  }
  std::array<const ScalarField*, 8> fields() const {
    return {&a0, &pi0, &a[0], &a[1], &a[2], &pi[0], &pi[1], &pi[2]};
  }

  void fill_all_ghosts() {
    for (ScalarField* f : fields()) fill_ghosts(*f);
  }

  /// Max of |field| over all 8 fields (divergence monitoring).
  double max_abs() const;
};

/// Right-hand side of the canonical evolution equations with every spatial
/// derivative realized as a central difference:
///   d0 A^0  = lambda Pi_0 - d_i A^i
///   d0 Pi_0 = -p2 A^0 - d_i Pi^i
///   d0 A^i  = p1 Pi^i - d^i A^0
///   d0 Pi_i = p2 A_i - d_i Pi_0 + (d_j d^j A_i - d_i d_j A^j)/p1
/// where d0 = (1/c) d/dt. Returns the derivative with respect to x^0.
/// The lambda value is evaluated at u.time.
ProcaState continuum_rhs(const ProcaState& u, const Params& p,
                         const LambdaField& lambda);

}  // namespace proca
