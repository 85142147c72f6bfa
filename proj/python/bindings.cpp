// pybind11 surface over the core library: grid/state construction, the two
// steppers, diagnostics, and the run/sweep/analyze drivers.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "proca/analysis.hpp"
#include "proca/diagnostics.hpp"
#include "proca/initdata.hpp"
#include "proca/runner.hpp"

namespace py = pybind11;
using namespace proca;

namespace {

py::array_t<double> field_values(const ScalarField& f) {
  const GridSpec& g = f.grid();
  py::array_t<double> out({g.n3, g.n2, g.n1});
  auto r = out.mutable_unchecked<3>();
  for (int k = 0; k < g.n3; ++k)
    for (int j = 0; j < g.n2; ++j)
      for (int i = 0; i < g.n1; ++i) r(k, j, i) = f(i, j, k);
  return out;
}

void field_set_values(ScalarField& f, py::array_t<double> arr) {
  const GridSpec& g = f.grid();
  auto r = arr.unchecked<3>();
  if (r.shape(0) != g.n3 || r.shape(1) != g.n2 || r.shape(2) != g.n1) {
    throw py::value_error("array shape must be (n3, n2, n1)");
  }
  for (int k = 0; k < g.n3; ++k)
    for (int j = 0; j < g.n2; ++j)
      for (int i = 0; i < g.n1; ++i) f(i, j, k) = r(k, j, i);
  fill_ghosts(f);
}

py::array_t<std::complex<double>> mat8_to_numpy(const Mat8& m) {
  py::array_t<std::complex<double>> out({8, 8});
  auto r = out.mutable_unchecked<2>();
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) r(i, j) = m[i * 8 + j];
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Proca field evolution with constraint-preserving (SPS) and "
            "standard (SS) implicit schemes";

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init<>())
      .def_static("unit_square", &GridSpec::unit_square, py::arg("n1"),
                  py::arg("n2"), py::arg("n3") = 1)
      .def_readwrite("n1", &GridSpec::n1)
      .def_readwrite("n2", &GridSpec::n2)
      .def_readwrite("n3", &GridSpec::n3)
      .def_readwrite("dx1", &GridSpec::dx1)
      .def_readwrite("dx2", &GridSpec::dx2)
      .def_readwrite("dx3", &GridSpec::dx3)
      .def("cell_volume", &GridSpec::cell_volume)
      .def("coord", &GridSpec::coord, py::arg("axis"), py::arg("i"));

  py::class_<ScalarField>(m, "ScalarField")
      .def(py::init<const GridSpec&>())
      .def("values", &field_values, "Interior values as an (n3, n2, n1) array")
      .def("set_values", &field_set_values, py::arg("array"),
           "Set interior values and refill ghosts");

  m.def("fill_ghosts", &fill_ghosts);
  m.def("diff1", &diff1, py::arg("f"), py::arg("axis"));
  m.def("diff_fwd", &diff_fwd, py::arg("f"), py::arg("axis"));
  m.def("diff_bwd", &diff_bwd, py::arg("f"), py::arg("axis"));
  m.def("diff2", &diff2, py::arg("f"), py::arg("axis_i"), py::arg("axis_j"));
  m.def("l2_norm", &l2_norm);
  m.def("linf_norm", &linf_norm);

  py::class_<Params>(m, "Params")
      .def(py::init<>())
      .def_readwrite("c", &Params::c)
      .def_readwrite("p1", &Params::p1)
      .def_readwrite("p2", &Params::p2)
      .def_readwrite("lambda0", &Params::lambda0)
      .def_readwrite("dt", &Params::dt)
      .def_readwrite("a", &Params::a)
      .def("validate", &Params::validate);

  py::class_<LambdaField>(m, "LambdaField")
      .def_static("constant", &LambdaField::constant, py::arg("value"))
      .def_static("linear_in_time", &LambdaField::linear_in_time,
                  py::arg("value0"), py::arg("rate"))
      .def("is_constant", &LambdaField::is_constant)
      .def("at", &LambdaField::at, py::arg("t"));

  py::class_<ProcaState>(m, "ProcaState")
      .def(py::init<const GridSpec&>())
      .def_readwrite("step_index", &ProcaState::step_index)
      .def_readwrite("time", &ProcaState::time)
      .def_property_readonly("grid", &ProcaState::grid)
      .def("max_abs", &ProcaState::max_abs)
      .def("a0", [](const ProcaState& u) { return field_values(u.a0); })
      .def("pi0", [](const ProcaState& u) { return field_values(u.pi0); })
      .def("a", [](const ProcaState& u, int i) {
        return field_values(u.a.at(i));
      })
      .def("pi", [](const ProcaState& u, int i) {
        return field_values(u.pi.at(i));
      })
      .def("set_a0", [](ProcaState& u, py::array_t<double> v) {
        field_set_values(u.a0, v);
      })
      .def("set_pi0", [](ProcaState& u, py::array_t<double> v) {
        field_set_values(u.pi0, v);
      })
      .def("set_a", [](ProcaState& u, int i, py::array_t<double> v) {
        field_set_values(u.a.at(i), v);
      })
      .def("set_pi", [](ProcaState& u, int i, py::array_t<double> v) {
        field_set_values(u.pi.at(i), v);
      });

  m.def("continuum_rhs", &continuum_rhs, py::arg("state"), py::arg("params"),
        py::arg("lam"));

  py::enum_<SchemeKind>(m, "SchemeKind")
      .value("sps", SchemeKind::sps)
      .value("ss", SchemeKind::ss);
  py::enum_<SolverKind>(m, "SolverKind")
      .value("spectral", SolverKind::spectral)
      .value("iterative", SolverKind::iterative);

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("kind", &SolverConfig::kind)
      .def_readwrite("tol", &SolverConfig::tol)
      .def_readwrite("max_iter", &SolverConfig::max_iter);

  py::class_<LinearStepSystem>(m, "LinearStepSystem")
      .def(py::init([](SchemeKind scheme, const Params& p,
                       const LambdaField& lam) {
             return LinearStepSystem{scheme, p, lam};
           }),
           py::arg("scheme"), py::arg("params"), py::arg("lam"))
      .def_readwrite("scheme", &LinearStepSystem::scheme)
      .def_readwrite("params", &LinearStepSystem::params)
      .def_readwrite("lam", &LinearStepSystem::lambda);

  m.def("apply_L",
        py::overload_cast<const LinearStepSystem&, const ProcaState&>(&apply_L),
        py::arg("system"), py::arg("state"));

  py::class_<StepResult>(m, "StepResult")
      .def_readonly("state", &StepResult::state)
      .def_readonly("iterations", &StepResult::iterations)
      .def_readonly("residual", &StepResult::residual);

  m.def("step", &step, py::arg("state"), py::arg("system"), py::arg("solver"));
  m.def("solve_spectral", &solve_spectral, py::arg("system"), py::arg("state"));
  m.def("solve_iterative", &solve_iterative, py::arg("system"),
        py::arg("state"), py::arg("lambda_value"), py::arg("tol") = 1e-12,
        py::arg("max_iter") = 10000);

  py::class_<SpectralStepper>(m, "SpectralStepper")
      .def(py::init<const GridSpec&, const LinearStepSystem&>(),
           py::arg("grid"), py::arg("system"))
      .def("step", &SpectralStepper::step, py::arg("state"));

  m.def("amplification_matrix",
        [](SchemeKind scheme, const Params& p, double lam, const GridSpec& g,
           std::array<int, 3> k) {
          return mat8_to_numpy(amplification_matrix(scheme, p, lam, g, k));
        },
        py::arg("scheme"), py::arg("params"), py::arg("lambda_value"),
        py::arg("grid"), py::arg("mode"));

  // diagnostics
  m.def("constraint_c1", &constraint_c1);
  m.def("constraint_c2", &constraint_c2, py::arg("state"), py::arg("params"));
  m.def("hamiltonian_density_sps", &hamiltonian_density_sps);
  m.def("hamiltonian_density_ss", &hamiltonian_density_ss);
  m.def("total_hamiltonian", &total_hamiltonian, py::arg("state"),
        py::arg("params"), py::arg("lam"), py::arg("kind"));
  m.def("residual_c1_propagation", &residual_c1_propagation);
  m.def("residual_c2_propagation", &residual_c2_propagation);
  m.def("ss_defect", &ss_defect);
  m.def("residual_energy_balance", &residual_energy_balance);

  py::class_<DiagnosticsRecord>(m, "DiagnosticsRecord")
      .def_readonly("step", &DiagnosticsRecord::step)
      .def_readonly("time", &DiagnosticsRecord::time)
      .def_readonly("c1_l2", &DiagnosticsRecord::c1_l2)
      .def_readonly("c2_l2", &DiagnosticsRecord::c2_l2)
      .def_readonly("hc", &DiagnosticsRecord::hc)
      .def_readonly("hc_rel_err", &DiagnosticsRecord::hc_rel_err)
      .def_readonly("c1_prop_res", &DiagnosticsRecord::c1_prop_res)
      .def_readonly("c2_prop_res", &DiagnosticsRecord::c2_prop_res)
      .def_readonly("energy_res", &DiagnosticsRecord::energy_res)
      .def_readonly("ss_defect_l2", &DiagnosticsRecord::ss_defect_l2)
      .def_readonly("solver_iters", &DiagnosticsRecord::solver_iters)
      .def_readonly("max_abs_a1", &DiagnosticsRecord::max_abs_a1);
  m.def("collect", &collect, py::arg("u_prev"), py::arg("u_next"),
        py::arg("system"), py::arg("hc0"), py::arg("solver_iters") = 0);
  m.def("collect_initial", &collect_initial);

  // initial data
  m.def("plane_wave_initial_state", &plane_wave_initial_state, py::arg("grid"),
        py::arg("params"));
  py::class_<InitialConstraintReport>(m, "InitialConstraintReport")
      .def_readonly("c1_l2", &InitialConstraintReport::c1_l2)
      .def_readonly("c2_l2", &InitialConstraintReport::c2_l2);
  m.def("verify_initial_constraints", &verify_initial_constraints);

  // analysis
  py::class_<ConstraintModeReport>(m, "ConstraintModeReport")
      .def_readonly("h", &ConstraintModeReport::h)
      .def_readonly("discriminant", &ConstraintModeReport::discriminant)
      .def_readonly("eigenvalues", &ConstraintModeReport::eigenvalues)
      .def_readonly("growing", &ConstraintModeReport::growing);
  m.def("constraint_eigenvalues", &constraint_eigenvalues, py::arg("h"),
        py::arg("p2"), py::arg("lambda_value"));
  m.def("cfl_timestep", &cfl_timestep, py::arg("grid"), py::arg("cfl"),
        py::arg("c"));
  py::class_<ConvergenceOrder>(m, "ConvergenceOrder")
      .def_readonly("order", &ConvergenceOrder::order)
      .def_readonly("monotone", &ConvergenceOrder::monotone);
  m.def("convergence_order", &convergence_order, py::arg("spacing_error"));
  m.def("stability_max_radius",
        [](SchemeKind scheme, const Params& p, double lam, const GridSpec& g) {
          const StabilityReport rep = stability_report(scheme, p, lam, g);
          return py::make_tuple(rep.max_radius, rep.argmax);
        },
        py::arg("scheme"), py::arg("params"), py::arg("lambda_value"),
        py::arg("grid"));

  // runner
  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("scheme", &RunConfig::scheme)
      .def_readwrite("n1", &RunConfig::n1)
      .def_readwrite("n2", &RunConfig::n2)
      .def_readwrite("n3", &RunConfig::n3)
      .def_readwrite("cfl", &RunConfig::cfl)
      .def_readwrite("t_end", &RunConfig::t_end)
      .def_readwrite("c", &RunConfig::c)
      .def_readwrite("p1", &RunConfig::p1)
      .def_readwrite("p2", &RunConfig::p2)
      .def_readwrite("lambda0", &RunConfig::lambda)
      .def_readwrite("amplitude", &RunConfig::amplitude)
      .def_readwrite("solver", &RunConfig::solver)
      .def_readwrite("tol", &RunConfig::tol)
      .def_readwrite("max_iter", &RunConfig::max_iter)
      .def_readwrite("report_every", &RunConfig::report_every)
      .def_readwrite("snapshot_times", &RunConfig::snapshot_times)
      .def_readwrite("out_dir", &RunConfig::out_dir)
      .def_readwrite("divergence_cutoff", &RunConfig::divergence_cutoff)
      .def_readwrite("stability_summary", &RunConfig::stability_summary);

  py::class_<RunSummary>(m, "RunSummary")
      .def_readonly("termination", &RunSummary::termination)
      .def_readonly("final_time", &RunSummary::final_time)
      .def_readonly("steps", &RunSummary::steps)
      .def_readonly("dt", &RunSummary::dt)
      .def_readonly("hc0", &RunSummary::hc0)
      .def_readonly("c2_t0", &RunSummary::c2_t0)
      .def_readonly("c2_t10", &RunSummary::c2_t10)
      .def_readonly("c2_final", &RunSummary::c2_final)
      .def_readonly("max_radius", &RunSummary::max_radius)
      .def_readonly("error", &RunSummary::error);

  m.def("run", &run, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("sweep", [](const RunConfig& base, const std::vector<int>& res,
                    const std::vector<SchemeKind>& schemes) {
          py::gil_scoped_release release;
          SweepResult r = sweep(base, res, schemes);
          std::vector<py::tuple> out;
          py::gil_scoped_acquire acquire;
          for (const SweepEntry& e : r.entries) {
            out.push_back(py::make_tuple(scheme_name(e.scheme), e.n,
                                         e.summary.final_time,
                                         e.summary.termination));
          }
          return out;
        },
        py::arg("base"), py::arg("resolutions"), py::arg("schemes"));
  m.def("analyze", &analyze, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
}
