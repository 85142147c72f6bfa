#include "proca/runner.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "proca/initdata.hpp"

namespace proca {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::string scheme_name(SchemeKind k) {
  return k == SchemeKind::sps ? "sps" : "ss";
}

std::string solver_name(SolverKind k) {
  return k == SolverKind::spectral ? "spectral" : "iterative";
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_time_label(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", t);
  return buf;
}

class Stopwatch {
 public:
  void start() { t0_ = std::chrono::steady_clock::now(); }
  double stop() {
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

void write_series_header(std::ofstream& os) {
  os << "step,time,c1_l2,c2_l2,hc,hc_rel_err,c1_prop_res,c2_prop_res,energy_res,"
        "ss_defect_l2,solver_iters,max_abs_a1\n";
}

void write_series_row(std::ofstream& os, const DiagnosticsRecord& r) {
  os << r.step << ',' << fmt(r.time) << ',' << fmt(r.c1_l2) << ','
     << fmt(r.c2_l2) << ',' << fmt(r.hc) << ',' << fmt(r.hc_rel_err) << ','
     << fmt(r.c1_prop_res) << ',' << fmt(r.c2_prop_res) << ',' << fmt(r.energy_res)
     << ',' << fmt(r.ss_defect_l2) << ',' << r.solver_iters << ','
     << fmt(r.max_abs_a1) << '\n';
}

void write_snapshot(const fs::path& dir, const ProcaState& u, double t) {
  const GridSpec& g = u.grid();
  const std::string label = fmt_time_label(t);
  {
    std::ofstream os(dir / ("snapshot_t" + label + ".csv"));
    os << "# n1=" << g.n1 << " n2=" << g.n2 << " n3=" << g.n3
       << " dx1=" << fmt(g.dx1) << " dx2=" << fmt(g.dx2)
       << " dx3=" << fmt(g.dx3) << " t=" << fmt(t) << " field=A1\n";
    for (int k = 0; k < g.n3; ++k) {
      for (int j = 0; j < g.n2; ++j) {
        for (int i = 0; i < g.n1; ++i) {
          os << fmt(u.a[0](i, j, k));
          os << (i + 1 < g.n1 ? ',' : '\n');
        }
      }
    }
  }
  {
    // x = y diagonal extraction of A1 (first z plane)
    std::ofstream os(dir / ("snapshot_t" + label + "_diag.csv"));
    os << "x,A1\n";
    const int n = std::min(g.n1, g.n2);
    for (int i = 0; i < n; ++i) {
      os << fmt(g.coord(0, i)) << ',' << fmt(u.a[0](i, i, 0)) << '\n';
    }
  }
}

json config_to_json(const RunConfig& c) {
  json j;
  j["scheme"] = scheme_name(c.scheme);
  j["n1"] = c.n1;
  j["n2"] = c.n2;
  j["n3"] = c.n3;
  j["cfl"] = c.cfl;
  j["t_end"] = c.t_end;
  j["c"] = c.c;
  j["p1"] = c.p1;
  j["p2"] = c.p2;
  j["lambda"] = c.lambda;
  j["amplitude"] = c.amplitude;
  j["solver"] = solver_name(c.solver);
  j["tol"] = c.tol;
  j["max_iter"] = c.max_iter;
  j["report_every"] = c.report_every;
  j["snapshot_times"] = c.snapshot_times;
  j["out_dir"] = c.out_dir;
  j["divergence_cutoff"] = c.divergence_cutoff;
  j["stability_summary"] = c.stability_summary;
  return j;
}

}  // namespace

Params RunConfig::to_params() const {
  Params p;
  p.c = c;
  p.p1 = p1;
  p.p2 = p2;
  p.lambda0 = lambda;
  p.a = amplitude;
  p.dt = cfl_timestep(to_grid(), cfl, c);
  return p;
}

GridSpec RunConfig::to_grid() const { return GridSpec::unit_square(n1, n2, n3); }

void RunConfig::validate() const {
  if (n1 < 1 || n2 < 1 || n3 < 1)
    throw ConfigError("grid counts must be positive");
  if (cfl <= 0.0) throw ConfigError("cfl must be positive");
  if (t_end < 0.0) throw ConfigError("t-end must be nonnegative");
  if (c <= 0.0) throw ConfigError("c must be positive");
  if (p1 == 0.0) throw ConfigError("p1 must be nonzero");
  if (lambda == 0.0) throw ConfigError("lambda must be nonzero");
  if (tol <= 0.0) throw ConfigError("tol must be positive");
  if (max_iter < 1) throw ConfigError("max-iter must be positive");
  if (report_every < 1) throw ConfigError("report-every must be positive");
  if (divergence_cutoff <= 0.0)
    throw ConfigError("divergence cutoff must be positive");
}

RunSummary run(const RunConfig& config) {
  config.validate();
  const GridSpec grid = config.to_grid();
  const Params params = config.to_params();
  const LinearStepSystem sys{config.scheme, params,
                             LambdaField::constant(config.lambda)};

  fs::create_directories(config.out_dir);
  const fs::path dir(config.out_dir);

  RunSummary summary;
  summary.dt = params.dt;
  Stopwatch sw;

  ProcaState state = plane_wave_initial_state(grid, params);
  summary.hc0 = total_hamiltonian(state, params, sys.lambda, config.scheme);
  summary.c2_t0 = l2_norm(constraint_c2(state, params));
  summary.c2_final = summary.c2_t0;

  const long nsteps = std::lround(config.t_end / params.dt);
  const long t10_step = std::lround(10.0 / params.dt);

  // Requested snapshot times quantized to the nearest step.
  std::map<long, double> snapshot_steps;
  for (double t : config.snapshot_times) {
    snapshot_steps[std::lround(t / params.dt)] = t;
  }

  std::ofstream series(dir / "series.csv");
  write_series_header(series);
  write_series_row(series, collect_initial(state, sys, summary.hc0));
  if (auto it = snapshot_steps.find(0); it != snapshot_steps.end()) {
    write_snapshot(dir, state, it->second);
  }

  std::unique_ptr<SpectralStepper> stepper;
  if (config.solver == SolverKind::spectral && nsteps > 0) {
    stepper = std::make_unique<SpectralStepper>(grid, sys);
  }
  const SolverConfig solver_cfg{config.solver, config.tol, config.max_iter};

  summary.termination = "t_end";
  summary.final_time = 0.0;
  ProcaState prev(grid);
  for (long s = 1; s <= nsteps; ++s) {
    prev = state;
    int iters = 0;
    sw.start();
    try {
      if (stepper) {
        state = stepper->step(state);
      } else {
        StepResult r = solve_iterative(sys, state, config.lambda, config.tol,
                                       config.max_iter);
        iters = r.iterations;
        state = std::move(r.state);
      }
    } catch (const SolverError& e) {
      summary.timings.solve_s += sw.stop();
      summary.termination = "solver_failure";
      summary.error = e.what();
      summary.steps = s - 1;
      break;
    }
    summary.timings.solve_s += sw.stop();
    summary.steps = s;

    const double max_abs = state.max_abs();
    const bool diverged = max_abs > config.divergence_cutoff;
    if (!diverged) summary.final_time = state.time;

    const bool report =
        (s % config.report_every == 0) || s == nsteps || diverged;
    if (report || s == t10_step) {
      sw.start();
      const DiagnosticsRecord rec = collect(prev, state, sys, summary.hc0, iters);
      summary.timings.diagnostics_s += sw.stop();
      summary.c2_final = rec.c2_l2;
      if (s == t10_step) summary.c2_t10 = rec.c2_l2;
      if (report) {
        sw.start();
        write_series_row(series, rec);
        summary.timings.io_s += sw.stop();
      }
    }
    if (auto it = snapshot_steps.find(s); it != snapshot_steps.end()) {
      sw.start();
      write_snapshot(dir, state, it->second);
      summary.timings.io_s += sw.stop();
    }
    if (diverged) {
      summary.termination = "divergence";
      break;
    }
  }
  series.close();

  if (config.stability_summary) {
    const StabilityReport rep = stability_report(
        config.scheme, params, config.lambda, grid);
    summary.max_radius = rep.max_radius;
  }

  json j;
  j["config"] = config_to_json(config);
  j["dt"] = summary.dt;
  j["steps"] = summary.steps;
  j["termination"] = summary.termination;
  j["final_time"] = summary.final_time;
  j["hc0"] = summary.hc0;
  j["c2_t0"] = summary.c2_t0;
  if (summary.c2_t10) j["c2_t10"] = *summary.c2_t10;
  j["c2_final"] = summary.c2_final;
  j["max_amplification_radius"] = summary.max_radius;
  j["timings"] = {{"solve_s", summary.timings.solve_s},
                  {"diagnostics_s", summary.timings.diagnostics_s},
                  {"io_s", summary.timings.io_s}};
  if (!summary.error.empty()) j["error"] = summary.error;
  std::ofstream(dir / "run.json") << j.dump(2) << '\n';

  return summary;
}

SweepResult sweep(const RunConfig& base, const std::vector<int>& resolutions,
                  const std::vector<SchemeKind>& schemes) {
  base.validate();
  fs::create_directories(base.out_dir);

  std::vector<SweepEntry> entries;
  for (SchemeKind sch : schemes) {
    for (int n : resolutions) {
      entries.push_back({sch, n, {}});
    }
  }

  int workers = 1;
  if (const char* env = std::getenv("PROCA_WORKERS")) {
    workers = std::max(1, std::atoi(env));
  }
  workers = std::min<int>(workers, int(entries.size()));

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= entries.size()) return;
      SweepEntry& e = entries[idx];
      RunConfig cfg = base;
      cfg.scheme = e.scheme;
      cfg.n1 = cfg.n2 = e.n;
      cfg.out_dir = (fs::path(base.out_dir) /
                     ("run_" + scheme_name(e.scheme) + "_n" +
                      std::to_string(e.n)))
                        .string();
      e.summary = run(cfg);
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SweepResult result;
  result.entries = entries;

  std::ofstream os(fs::path(base.out_dir) / "sweep.csv");
  os << "scheme,n,dx,dt,steps,final_valid_time,termination,c2_t0,c2_t10,"
        "c2_final,solve_s\n";
  for (const SweepEntry& e : entries) {
    const RunSummary& s = e.summary;
    os << scheme_name(e.scheme) << ',' << e.n << ',' << fmt(1.0 / e.n) << ','
       << fmt(s.dt) << ',' << s.steps << ',' << fmt(s.final_time) << ','
       << s.termination << ',' << fmt(s.c2_t0) << ','
       << (s.c2_t10 ? fmt(*s.c2_t10) : "") << ',' << fmt(s.c2_final) << ','
       << fmt(s.timings.solve_s) << '\n';
  }

  json j;
  for (SchemeKind sch : schemes) {
    std::vector<std::pair<double, double>> samples;
    for (const SweepEntry& e : entries) {
      if (e.scheme == sch && e.summary.c2_t0 > 0.0) {
        samples.emplace_back(1.0 / e.n, e.summary.c2_t0);
      }
    }
    if (samples.size() >= 2) {
      const ConvergenceOrder ord = convergence_order(samples);
      result.c2_t0_order[scheme_name(sch)] = ord.order;
      j["c2_t0_order"][scheme_name(sch)] = ord.order;
      j["c2_t0_order_monotone"][scheme_name(sch)] = ord.monotone;
    }
  }
  for (const SweepEntry& e : entries) {
    j["final_valid_time"][scheme_name(e.scheme)][std::to_string(e.n)] =
        e.summary.final_time;
  }
  std::ofstream(fs::path(base.out_dir) / "sweep_summary.json") << j.dump(2)
                                                               << '\n';
  return result;
}

void analyze(const RunConfig& config) {
  config.validate();
  const GridSpec grid = config.to_grid();
  Params params = config.to_params();

  fs::create_directories(config.out_dir);
  std::ofstream os(fs::path(config.out_dir) / "modes.csv");
  os << "k1,k2,k3,h1,h2,h3,disc_continuum,eig1_re,eig1_im,eig2_re,eig2_im,"
        "s1,s2,s3,disc_modified,radius_sps,radius_ss\n";

  double max_sps = 0.0, max_ss = 0.0;
  long growing = 0;
  for (int k3 = 0; k3 < grid.n3; ++k3) {
    for (int k2 = 0; k2 < grid.n2; ++k2) {
      for (int k1 = 0; k1 < grid.n1; ++k1) {
        const ModeIndex k{k1, k2, k3};
        const auto h = mode_wavevector(grid, k);
        const ConstraintModeReport rep =
            constraint_eigenvalues(h, config.p2, config.lambda);
        const ModeSymbols sym = mode_symbols(grid, k);
        const double disc_mod =
            config.p2 * config.lambda +
            sym.s[0] * sym.s[0] + sym.s[1] * sym.s[1] + sym.s[2] * sym.s[2];
        const double r_sps = spectral_radius(amplification_matrix(
            SchemeKind::sps, params, config.lambda, grid, k));
        const double r_ss = spectral_radius(amplification_matrix(
            SchemeKind::ss, params, config.lambda, grid, k));
        max_sps = std::max(max_sps, r_sps);
        max_ss = std::max(max_ss, r_ss);
        if (rep.growing) ++growing;
        os << k1 << ',' << k2 << ',' << k3 << ',' << fmt(h[0]) << ','
           << fmt(h[1]) << ',' << fmt(h[2]) << ',' << fmt(rep.discriminant)
           << ',' << fmt(rep.eigenvalues[0].real()) << ','
           << fmt(rep.eigenvalues[0].imag()) << ','
           << fmt(rep.eigenvalues[1].real()) << ','
           << fmt(rep.eigenvalues[1].imag()) << ',' << fmt(sym.s[0]) << ','
           << fmt(sym.s[1]) << ',' << fmt(sym.s[2]) << ',' << fmt(disc_mod)
           << ',' << fmt(r_sps) << ',' << fmt(r_ss) << '\n';
      }
    }
  }

  json j;
  j["config"] = config_to_json(config);
  j["max_radius_sps"] = max_sps;
  j["max_radius_ss"] = max_ss;
  j["growing_continuum_modes"] = growing;
  std::ofstream(fs::path(config.out_dir) / "analyze.json") << j.dump(2) << '\n';
}

}  // namespace proca
