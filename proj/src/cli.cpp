#include "feec_mhd/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "feec_mhd/checks.hpp"
#include "feec_mhd/convergence.hpp"
#include "feec_mhd/integrator.hpp"
#include "feec_mhd/io.hpp"
#include "feec_mhd/scenarios.hpp"

namespace feec_mhd {

namespace {

struct RunOptions {
  std::string scenario;
  std::optional<int> nx, ny, degree;
  std::optional<double> dt, t_final, reverse_at;
  double tol = SolverParams{}.nonlinear_tol;
  double b0 = 0.0;
  int anderson = 0;
  std::string out_dir = "out";
  int snapshot_every = 0;
};

struct ConvergenceOptions {
  std::string scenario = "taylor-green";
  std::vector<int> degrees{1, 2};
  std::vector<int> grids{8, 16, 32};
  double dt = 1e-3;
  double t_final = 1.0;
  double tol = SolverParams{}.nonlinear_tol;
  std::string csv;
};

int steps_for(double t, double dt) {
  const double n = t / dt;
  const long r = std::lround(n);
  if (r < 0 || std::abs(n - r) > 1e-9 * std::max(1.0, n))
    throw std::invalid_argument("time " + std::to_string(t) + " is not a multiple of dt " + std::to_string(dt));
  return static_cast<int>(r);
}

std::string snapshot_name(const std::filesystem::path& dir, int k) {
  std::ostringstream os;
  os << "snapshot_" << std::setw(6) << std::setfill('0') << k << ".vtk";
  return (dir / os.str()).string();
}

int do_run(const RunOptions& o) {
  const ScenarioSpec spec = scenario_by_name(o.scenario, o.b0);
  const int nx = o.nx.value_or(spec.nx), ny = o.ny.value_or(spec.ny), p = o.degree.value_or(spec.degree);
  const double dt = o.dt.value_or(spec.dt);
  if (nx < 1 || ny < 1 || p < 1 || !(dt > 0.0) || !(o.tol > 0.0) || o.snapshot_every < 0)
    throw std::invalid_argument("grid sizes, degree, dt and tol must be positive");
  SolverParams params;
  params.nonlinear_tol = o.tol;
  params.anderson_depth = o.anderson;

  const int n_steps = steps_for(o.reverse_at ? *o.reverse_at : o.t_final.value_or(spec.t_final), dt);
  const std::filesystem::path dir(o.out_dir);
  std::filesystem::create_directories(dir);
  const DeRham2D complex = build_complex(spec, nx, ny, p);
  const MHDState s0 = initial_state(complex, spec);
  const SampleGrid grid = default_sample_grid(complex);

  std::cout << spec.name << ": " << nx << "x" << ny << " cells, degree " << p << ", dt " << dt << '\n';
  int step_offset = 0;
  auto hook = [&](int k, const MHDState& st, const InvariantsRow& row) {
    const int g = step_offset + k;
    if (o.snapshot_every > 0 && g % o.snapshot_every == 0) write_vtk(complex, spec.eos, st, grid, snapshot_name(dir, g));
    if (k > 0 && k % 100 == 0)
      std::cout << "  step " << g << " t=" << row.time << " E=" << std::setprecision(15) << row.total_energy
                << std::setprecision(6) << " picard=" << row.picard_iterations << std::endl;
  };

  const auto t0 = std::chrono::steady_clock::now();
  std::vector<InvariantsRow> rows;
  MHDState final_state;
  if (o.reverse_at) {
    const int n = n_steps;
    RunResult fwd = run(complex, spec.eos, spec.gravity, s0, dt, n, params, hook);
    step_offset = n;
    RunResult back = reverse_run(complex, spec.eos, spec.gravity, fwd.final_state, dt, n, params,
                                 [&](int k, const MHDState& st, const InvariantsRow& row) {
                                   if (k > 0) hook(k, st, row);
                                 });
    rows = std::move(fwd.rows);
    rows.insert(rows.end(), back.rows.begin() + 1, back.rows.end());
    final_state = std::move(back.final_state);
    const ReturnError e = return_error(complex, s0, final_state);
    std::cout << std::setprecision(3) << std::scientific << "return error after " << 2 * n
              << " steps (relative L2 / max coefficient):\n"
              << "  rho " << e.rho_l2 << " / " << e.rho_max << "\n  u   " << e.u_l2 << " / " << e.u_max << "\n  s   "
              << e.s_l2 << " / " << e.s_max << "\n  B   " << e.B_l2 << " / " << e.B_max << '\n'
              << std::defaultfloat << std::setprecision(6);
  } else {
    RunResult r = run(complex, spec.eos, spec.gravity, s0, dt, n_steps, params, hook);
    rows = std::move(r.rows);
    final_state = std::move(r.final_state);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  write_csv(rows, (dir / "invariants.csv").string());
  write_vtk(complex, spec.eos, final_state, grid, (dir / "final.vtk").string());
  const auto& a = rows.front();
  const auto& b = rows.back();
  std::cout << std::setprecision(3) << std::scientific << "done: " << rows.size() - 1 << " steps in "
            << std::defaultfloat << secs << " s\n"
            << std::scientific << "  mass drift    " << b.total_mass - a.total_mass << "\n  entropy drift "
            << b.total_entropy - a.total_entropy << "\n  energy drift  "
            << (b.total_energy - a.total_energy) / std::abs(a.total_energy) << " (relative)\n  div B         "
            << b.div_B_l2 << '\n';
  return 0;
}

int do_convergence(const ConvergenceOptions& o) {
  const ScenarioSpec spec = scenario_by_name(o.scenario);
  SolverParams params;
  params.nonlinear_tol = o.tol;
  const auto reports = convergence_study(spec, o.degrees, o.grids, o.dt, o.t_final, params,
                                         [](const std::string& s) { std::cout << "  " << s << std::endl; });
  std::ostringstream csv;
  csv << "degree,n,h,err_rho,order_rho,err_u,order_u\n" << std::setprecision(17);
  std::cout << "\n  p      n          h     err rho   order     err u   order\n";
  for (const auto& rep : reports)
    for (const auto& row : rep.rows) {
      auto fmt = [](const std::optional<double>& v) {
        if (!v) return std::string("-");
        std::ostringstream s;
        s << std::fixed << std::setprecision(2) << *v;
        return s.str();
      };
      std::printf("%3d %6d %10.4g %11.3e %7s %9.3e %7s\n", rep.degree, row.n, row.h, row.err_rho,
                  fmt(row.order_rho).c_str(), row.err_u, fmt(row.order_u).c_str());
      csv << rep.degree << ',' << row.n << ',' << row.h << ',' << row.err_rho << ','
          << (row.order_rho ? std::to_string(*row.order_rho) : "") << ',' << row.err_u << ','
          << (row.order_u ? std::to_string(*row.order_u) : "") << '\n';
    }
  if (!o.csv.empty()) {
    std::ofstream f(o.csv);
    if (!f) throw std::runtime_error("cannot write " + o.csv);
    f << csv.str();
  }
  return 0;
}

int do_invariants_check() {
  bool ok = true;
  for (const CheckResult& r : property_suite()) {
    std::printf("%s  %-40s %.3e (bound %.1e)\n", r.pass() ? "PASS" : "FAIL", r.name.c_str(), r.value, r.bound);
    ok = ok && r.pass();
  }
  return ok ? 0 : 1;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Structure-preserving 2D ideal MHD solver", "feec-mhd"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML file with option values; command line flags take precedence");

  std::string names;
  for (const auto& n : scenario_names()) names += (names.empty() ? "" : ", ") + n;

  RunOptions ro;
  CLI::App* run_cmd = app.add_subcommand("run", "Run a scenario and write invariants.csv and VTK snapshots");
  run_cmd->add_option("--scenario", ro.scenario, "One of: " + names)->required();
  run_cmd->add_option("--nx", ro.nx, "Cells along x (default: scenario)");
  run_cmd->add_option("--ny", ro.ny, "Cells along y (default: scenario)");
  run_cmd->add_option("--degree", ro.degree, "Spline degree p (default: scenario)");
  run_cmd->add_option("--dt", ro.dt, "Time step (default: scenario)");
  run_cmd->add_option("--t-final", ro.t_final, "End time (default: scenario)");
  run_cmd->add_option("--tol", ro.tol, "Nonlinear tolerance")->capture_default_str();
  run_cmd->add_option("--anderson", ro.anderson, "Anderson mixing depth, 0 for plain Picard")->capture_default_str();
  run_cmd->add_option("--b0", ro.b0, "Background field strength (mkhi)")->capture_default_str();
  run_cmd->add_option("--out-dir", ro.out_dir, "Output directory")->capture_default_str();
  run_cmd->add_option("--snapshot-every", ro.snapshot_every, "VTK snapshot interval in steps, 0 for final only")
      ->capture_default_str();
  run_cmd->add_option("--reverse-at", ro.reverse_at,
                      "Run forward to this time, then back to 0 with -dt and report the return error");

  ConvergenceOptions co;
  CLI::App* conv_cmd = app.add_subcommand("convergence", "Grid convergence study against a twice finer run");
  conv_cmd->add_option("--scenario", co.scenario, "Scenario")->capture_default_str();
  conv_cmd->add_option("--degrees", co.degrees, "Spline degrees")->delimiter(',')->capture_default_str();
  conv_cmd->add_option("--grids", co.grids, "Cells per direction")->delimiter(',')->capture_default_str();
  conv_cmd->add_option("--dt", co.dt, "Time step")->capture_default_str();
  conv_cmd->add_option("--t-final", co.t_final, "End time")->capture_default_str();
  conv_cmd->add_option("--tol", co.tol, "Nonlinear tolerance")->capture_default_str();
  conv_cmd->add_option("--csv", co.csv, "Also write the table to this file");

  app.add_subcommand("invariants-check", "Run the structural and conservation property checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*run_cmd) return do_run(ro);
    if (*conv_cmd) return do_convergence(co);
    return do_invariants_check();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace feec_mhd
