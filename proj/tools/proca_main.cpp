// Command-line driver: run / sweep / analyze subcommands over the Proca
// evolution library. Flags mirror the RunConfig fields; a flat key=value
// config file can seed any of them (flags win).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "proca/runner.hpp"

namespace {

struct CliOptions {
  proca::RunConfig cfg;
  std::string scheme = "sps";
  std::string solver = "spectral";
  std::vector<int> resolutions = {50, 100};
  std::vector<std::string> schemes = {"sps", "ss"};
  std::string config_file;
};

proca::SchemeKind parse_scheme(const std::string& s) {
  if (s == "sps") return proca::SchemeKind::sps;
  if (s == "ss") return proca::SchemeKind::ss;
  throw CLI::ValidationError("scheme must be sps or ss");
}

template <typename T>
void parse_list(const std::string& value, std::vector<T>& out) {
  out.clear();
  std::istringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream is(item);
    T v;
    is >> v;
    out.push_back(v);
  }
}

// Flat key=value config file; keys mirror the flag names. Loaded before the
// command line is parsed so flags override file values.
void load_flat_config(const std::string& path, CliOptions& o) {
  std::ifstream is(path);
  if (!is.good()) {
    throw proca::ConfigError("cannot open config file: " + path);
  }
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw proca::ConfigError("config line " + std::to_string(lineno) +
                               ": expected key=value");
    }
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    proca::RunConfig& c = o.cfg;
    if (key == "scheme") o.scheme = val;
    else if (key == "n1") c.n1 = std::stoi(val);
    else if (key == "n2") c.n2 = std::stoi(val);
    else if (key == "n3") c.n3 = std::stoi(val);
    else if (key == "cfl") c.cfl = std::stod(val);
    else if (key == "t-end") c.t_end = std::stod(val);
    else if (key == "c") c.c = std::stod(val);
    else if (key == "p1") c.p1 = std::stod(val);
    else if (key == "p2") c.p2 = std::stod(val);
    else if (key == "lambda") c.lambda = std::stod(val);
    else if (key == "amplitude") c.amplitude = std::stod(val);
    else if (key == "solver") o.solver = val;
    else if (key == "tol") c.tol = std::stod(val);
    else if (key == "max-iter") c.max_iter = std::stoi(val);
    else if (key == "report-every") c.report_every = std::stoi(val);
    else if (key == "snapshot-times") parse_list(val, c.snapshot_times);
    else if (key == "out-dir") c.out_dir = val;
    else if (key == "divergence-cutoff") c.divergence_cutoff = std::stod(val);
    else if (key == "stability-summary") c.stability_summary = val != "false";
    else if (key == "resolutions") parse_list(val, o.resolutions);
    else if (key == "schemes") parse_list(val, o.schemes);
    else {
      throw proca::ConfigError("config line " + std::to_string(lineno) +
                               ": unknown key '" + key + "'");
    }
  }
}

void add_common_flags(CLI::App* cmd, CliOptions& o) {
  cmd->add_option("--scheme", o.scheme, "Time stepper: sps | ss")
      ->check(CLI::IsMember({"sps", "ss"}));
  cmd->add_option("--n1", o.cfg.n1, "Grid cells along x");
  cmd->add_option("--n2", o.cfg.n2, "Grid cells along y");
  cmd->add_option("--n3", o.cfg.n3, "Grid cells along z (1 = pseudo-3D)");
  cmd->add_option("--cfl", o.cfg.cfl, "CFL number, dt = cfl*min(dx)/c");
  cmd->add_option("--t-end", o.cfg.t_end, "Simulation end time");
  cmd->add_option("--c", o.cfg.c, "Speed of light");
  cmd->add_option("--p1", o.cfg.p1, "Kinetic coefficient");
  cmd->add_option("--p2", o.cfg.p2, "Mass-term coefficient");
  cmd->add_option("--lambda", o.cfg.lambda, "Gauge parameter");
  cmd->add_option("--amplitude", o.cfg.amplitude, "Initial-data amplitude");
  cmd->add_option("--solver", o.solver, "Linear solver: spectral | iterative")
      ->check(CLI::IsMember({"spectral", "iterative"}));
  cmd->add_option("--tol", o.cfg.tol, "Iterative solver tolerance");
  cmd->add_option("--max-iter", o.cfg.max_iter, "Iterative solver cap");
  cmd->add_option("--report-every", o.cfg.report_every,
                  "Steps between series.csv rows");
  cmd->add_option("--snapshot-times", o.cfg.snapshot_times,
                  "Times at which to dump A1 snapshots");
  cmd->add_option("--out-dir", o.cfg.out_dir, "Output directory");
  cmd->add_option("--divergence-cutoff", o.cfg.divergence_cutoff,
                  "Field magnitude treated as a stopped run");
  cmd->add_flag("!--no-stability-summary", o.cfg.stability_summary,
                "Skip the per-run amplification summary");
  cmd->add_option("--config", o.config_file,
                  "Flat key=value config file (flags take precedence)");
}

void finalize(CliOptions& o) {
  o.cfg.scheme = parse_scheme(o.scheme);
  o.cfg.solver = o.solver == "spectral" ? proca::SolverKind::spectral
                                        : proca::SolverKind::iterative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proca field evolution with constraint-preserving (SPS) and "
               "standard (SS) implicit schemes"};
  app.require_subcommand(1);

  CliOptions o;
  CLI::App* cmd_run = app.add_subcommand("run", "Evolve one configuration");
  add_common_flags(cmd_run, o);
  CLI::App* cmd_sweep =
      app.add_subcommand("sweep", "Run a resolution sweep for both schemes");
  add_common_flags(cmd_sweep, o);
  cmd_sweep->add_option("--resolutions", o.resolutions,
                        "Grid sizes (n1 = n2 = n)");
  cmd_sweep->add_option("--schemes", o.schemes, "Schemes to sweep")
      ->check(CLI::IsMember({"sps", "ss"}));
  CLI::App* cmd_analyze =
      app.add_subcommand("analyze", "Per-mode constraint and stability report");
  add_common_flags(cmd_analyze, o);

  // The config file seeds the defaults, so it must be read before the
  // regular parse; flags then override file values.
  try {
    for (int i = 1; i + 1 < argc; ++i) {
      if (std::string(argv[i]) == "--config") {
        load_flat_config(argv[i + 1], o);
        break;
      }
    }
  } catch (const proca::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  }

  CLI11_PARSE(app, argc, argv);

  try {
    finalize(o);
    if (cmd_run->parsed()) {
      const proca::RunSummary s = proca::run(o.cfg);
      std::cout << "termination=" << s.termination
                << " final_time=" << s.final_time << " steps=" << s.steps
                << " hc0=" << s.hc0 << "\n";
      if (s.termination == "solver_failure") {
        std::cerr << "solver failure: " << s.error << "\n";
        return 3;
      }
    } else if (cmd_sweep->parsed()) {
      std::vector<proca::SchemeKind> schemes;
      for (const std::string& s : o.schemes) schemes.push_back(parse_scheme(s));
      const proca::SweepResult r = proca::sweep(o.cfg, o.resolutions, schemes);
      for (const auto& e : r.entries) {
        std::cout << proca::scheme_name(e.scheme) << " n=" << e.n
                  << " final_valid_time=" << e.summary.final_time << " ("
                  << e.summary.termination << ")\n";
      }
      for (const auto& [name, order] : r.c2_t0_order) {
        std::cout << "c2(0) order [" << name << "] = " << order << "\n";
      }
    } else if (cmd_analyze->parsed()) {
      proca::analyze(o.cfg);
      std::cout << "wrote modes.csv and analyze.json to " << o.cfg.out_dir
                << "\n";
    }
  } catch (const proca::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
