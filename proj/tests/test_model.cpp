#include <doctest.h>

#include <cmath>
#include <random>

#include "proca/diagnostics.hpp"
#include "proca/initdata.hpp"
#include "proca/model.hpp"

using namespace proca;

namespace {

ProcaState random_state(const GridSpec& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  ProcaState u(g);
  for (ScalarField* f : u.fields())
    for (int k = 0; k < g.n3; ++k)
      for (int j = 0; j < g.n2; ++j)
        for (int i = 0; i < g.n1; ++i) (*f)(i, j, k) = dist(rng);
  u.fill_all_ghosts();
  return u;
}

double state_max_diff(const ProcaState& a, const ProcaState& b) {
  double m = 0.0;
  auto af = a.fields();
  auto bf = b.fields();
  const GridSpec& g = a.grid();
  for (int f = 0; f < 8; ++f)
    for (int k = 0; k < g.n3; ++k)
      for (int j = 0; j < g.n2; ++j)
        for (int i = 0; i < g.n1; ++i)
          m = std::max(m, std::abs((*af[f])(i, j, k) - (*bf[f])(i, j, k)));
  return m;
}

}  // namespace

TEST_CASE("Params validation") {
  Params p;
  p.p1 = 0.0;
  CHECK_THROWS(p.validate());
  p.p1 = 1.0;
  p.lambda0 = 0.0;
  CHECK_THROWS(p.validate());
  p.lambda0 = 0.01;
  CHECK_NOTHROW(p.validate());
}

TEST_CASE("LambdaField: constant and time-dependent") {
  LambdaField c = LambdaField::constant(0.01);
  CHECK(c.is_constant());
  CHECK(c.at(0.0) == 0.01);
  CHECK(c.at(5.0) == 0.01);
  CHECK_THROWS(LambdaField::constant(0.0));

  LambdaField lin = LambdaField::linear_in_time(0.01, 0.001);
  CHECK_FALSE(lin.is_constant());
  CHECK(lin.at(0.0) == doctest::Approx(0.01));
  CHECK(lin.at(2.0) == doctest::Approx(0.012));
}

TEST_CASE("continuum_rhs: zero state gives zero derivative") {
  GridSpec g = GridSpec::unit_square(16, 16, 1);
  ProcaState u(g);
  Params p;
  ProcaState rhs = continuum_rhs(u, p, LambdaField::constant(0.01));
  for (const ScalarField* f : rhs.fields()) CHECK(linf_norm(*f) == 0.0);
}

TEST_CASE("continuum_rhs: state with only Pi_0 = 1") {
  GridSpec g = GridSpec::unit_square(16, 16, 1);
  ProcaState u(g);
  for (int j = 0; j < g.n2; ++j)
    for (int i = 0; i < g.n1; ++i) u.pi0(i, j, 0) = 1.0;
  u.fill_all_ghosts();
  Params p;
  const double lam = 0.01;
  ProcaState rhs = continuum_rhs(u, p, LambdaField::constant(lam));
  for (int j = 0; j < g.n2; ++j)
    for (int i = 0; i < g.n1; ++i) CHECK(rhs.a0(i, j, 0) == lam);
  CHECK(linf_norm(rhs.pi0) == 0.0);
  for (int ax = 0; ax < 3; ++ax) {
    CHECK(linf_norm(rhs.a[ax]) == 0.0);
    CHECK(linf_norm(rhs.pi[ax]) == 0.0);  // diff1 of constant Pi_0 vanishes
  }
}

TEST_CASE("continuum_rhs: Pi_0 row is the C2 field, bit for bit") {
  GridSpec g = GridSpec::unit_square(50, 50, 1);
  Params p;
  ProcaState u = plane_wave_initial_state(g, p);
  ProcaState rhs = continuum_rhs(u, p, LambdaField::constant(0.01));
  ScalarField c2 = constraint_c2(u, p);
  for (int j = 0; j < g.n2; ++j)
    for (int i = 0; i < g.n1; ++i)
      CHECK(rhs.pi0(i, j, 0) == c2(i, j, 0));
  CHECK(l2_norm(rhs.pi0) == l2_norm(c2));
}

TEST_CASE("continuum_rhs: linearity") {
  GridSpec g = GridSpec::unit_square(14, 12, 2);
  Params p;
  LambdaField lam = LambdaField::constant(0.01);
  ProcaState u = random_state(g, 7);
  ProcaState v = random_state(g, 9);
  const double alpha = 1.7, beta = -0.4;

  ProcaState w(g);
  {
    auto wf = w.fields();
    auto uf = u.fields();
    auto vf = v.fields();
    for (int f = 0; f < 8; ++f)
      for (int k = 0; k < g.n3; ++k)
        for (int j = 0; j < g.n2; ++j)
          for (int i = 0; i < g.n1; ++i)
            (*wf[f])(i, j, k) =
                alpha * (*uf[f])(i, j, k) + beta * (*vf[f])(i, j, k);
  }
  w.fill_all_ghosts();

  ProcaState rw = continuum_rhs(w, p, lam);
  ProcaState ru = continuum_rhs(u, p, lam);
  ProcaState rv = continuum_rhs(v, p, lam);
  ProcaState combo(g);
  {
    auto cf = combo.fields();
    auto uf = ru.fields();
    auto vf = rv.fields();
    for (int f = 0; f < 8; ++f)
      for (int k = 0; k < g.n3; ++k)
        for (int j = 0; j < g.n2; ++j)
          for (int i = 0; i < g.n1; ++i)
            (*cf[f])(i, j, k) =
                alpha * (*uf[f])(i, j, k) + beta * (*vf[f])(i, j, k);
  }
  double scale = 0.0;
  for (const ScalarField* f : rw.fields())
    scale = std::max(scale, linf_norm(*f));
  CHECK(state_max_diff(rw, combo) <= 1e-13 * scale);
}
