/// @file runner.hpp
/// @brief Simulation driver: configuration, runs, resolution sweeps, and
///        mode-analysis artifacts (CSV series, snapshots, JSON summaries).

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "proca/analysis.hpp"
#include "proca/diagnostics.hpp"

namespace proca {

struct RunConfig {
  SchemeKind scheme = SchemeKind::sps;
  int n1 = 100, n2 = 100, n3 = 1;
  double cfl = 0.25;
  double t_end = 80.0;
  double c = 1.0, p1 = 1.0, p2 = 1.0;
  double lambda = 0.01;
  double amplitude = 1.0;
  SolverKind solver = SolverKind::spectral;
  double tol = 1e-12;
  int max_iter = 10000;
  int report_every = 10;                ///< steps between series rows
  std::vector<double> snapshot_times;
  std::string out_dir = ".";
  double divergence_cutoff = 1e6;       ///< max field magnitude = "stopped"
  bool stability_summary = true;        ///< compute max G-radius for run.json

  Params to_params() const;
  GridSpec to_grid() const;
  void validate() const;  ///< throws ConfigError before any compute
};

struct PhaseTimings {
  double solve_s = 0.0;
  double diagnostics_s = 0.0;
  double io_s = 0.0;
};

struct RunSummary {
  std::string termination;  ///< "t_end" | "divergence" | "solver_failure"
  double final_time = 0.0;  ///< last time with all field norms below cutoff
  long steps = 0;
  double dt = 0.0;
  double hc0 = 0.0;
  double c2_t0 = 0.0;
  std::optional<double> c2_t10;  ///< L2 of C2 at t = 10 if reached
  double c2_final = 0.0;
  double max_radius = 0.0;  ///< stability summary (0 if disabled)
  PhaseTimings timings;
  std::string error;  ///< solver failure message, empty otherwise
};

/// Run one simulation; writes series.csv, snapshot_t<T>.csv (+ _diag),
/// and run.json into config.out_dir. Solver failure is recorded in the
/// summary (partial series retained), not thrown.
RunSummary run(const RunConfig& config);

struct SweepEntry {
  SchemeKind scheme;
  int n = 0;
  RunSummary summary;
};

struct SweepResult {
  std::vector<SweepEntry> entries;
  std::map<std::string, double> c2_t0_order;  ///< per scheme name
};

/// Run both schemes (or a subset) over a resolution list; writes per-run
/// artifacts under out_dir/run_<scheme>_n<n>/, plus sweep.csv and
/// sweep_summary.json. PROCA_WORKERS controls concurrent runs (default 1).
SweepResult sweep(const RunConfig& base, const std::vector<int>& resolutions,
                  const std::vector<SchemeKind>& schemes);

/// Write modes.csv (per-mode wavevector, constraint discriminant and
/// eigenvalues, amplification radii of both schemes) and analyze.json.
void analyze(const RunConfig& config);

std::string scheme_name(SchemeKind k);
std::string solver_name(SolverKind k);

}  // namespace proca
