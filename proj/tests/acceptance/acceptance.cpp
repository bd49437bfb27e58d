// Acceptance checks. One PASS/FAIL line per criterion; exit status 1 if any
// selected criterion fails.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "feec_mhd/checks.hpp"
#include "feec_mhd/convergence.hpp"
#include "feec_mhd/diagnostics.hpp"
#include "feec_mhd/integrator.hpp"
#include "feec_mhd/scenarios.hpp"
#include "residual_oracle.hpp"

using namespace feec_mhd;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::string fix(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

void progress(const std::string& s) {
  std::fprintf(stderr, "    %s\n", s.c_str());
  std::fflush(stderr);
}

struct Drifts {
  double mass = 0.0, entropy = 0.0, energy = 0.0, div_b = 0.0;
};

Drifts drifts(const std::vector<InvariantsRow>& rows) {
  Drifts d;
  const auto& a = rows.front();
  for (const auto& r : rows) {
    d.mass = std::max(d.mass, std::abs(r.total_mass - a.total_mass));
    d.entropy = std::max(d.entropy, std::abs(r.total_entropy - a.total_entropy));
    d.energy = std::max(d.energy, std::abs(r.total_energy - a.total_energy) / std::abs(a.total_energy));
    d.div_b = std::max(d.div_b, r.div_B_l2);
  }
  return d;
}

Outcome structural() {
  double dd = 0.0, hat = 0.0;
  for (Boundary by : {Boundary::periodic, Boundary::clamped})
    for (int n : {8, 16})
      for (int p : {1, 2}) {
        const DeRham2D c = build_derham(n, n, p, 1.0, 1.0, Boundary::periodic, by);
        dd = std::max(dd, complex_defect(c));
        hat = std::max(hat, hat_identity_defect(c, 20, 100 + n + p));
      }
  return {dd <= 1e-14 && hat <= 1e-13, "max|D1 D0| = " + sci(dd) + " (<= 1e-14), |hat(A_u) - u| = " + sci(hat) +
                                           " (<= 1e-13)"};
}

Outcome commuting() {
  const DeRham2D c = build_derham(16, 16, 2, 1.0, 1.0, Boundary::periodic, Boundary::periodic);
  const double d = commuting_defect(c);
  return {d <= 1e-10, "|D Pi F - Pi D F|_inf = " + sci(d) + " (<= 1e-10), 16^2 p=2"};
}

// Table 2 values at h = pi/8, pi/16, pi/32: {rho, u}
const std::map<std::pair<int, int>, std::pair<double, double>> table = {
    {{1, 8}, {1.6e-2, 5.6e-2}}, {{1, 16}, {5.1e-3, 1.3e-2}}, {{1, 32}, {1.2e-3, 3.0e-3}},
    {{2, 8}, {5.5e-3, 5.0e-3}}, {{2, 16}, {3.3e-4, 3.3e-4}},
};

const std::vector<ConvergenceReport>& tg_study() {
  static std::optional<std::vector<ConvergenceReport>> cache;
  if (!cache) {
    const ScenarioSpec tg = taylor_green_barotropic();
    SolverParams params;
    params.nonlinear_tol = 1e-10;
    cache = convergence_study(tg, {1}, {8, 16, 32}, 1e-3, 1.0, params, progress);
    const auto p2 = convergence_study(tg, {2}, {8, 16}, 1e-3, 1.0, params, progress);
    cache->push_back(p2.front());
  }
  return *cache;
}

Outcome convergence() {
  bool ok = true;
  std::ostringstream os;
  for (const auto& rep : tg_study()) {
    const double bound = rep.degree == 1 ? 1.6 : 3.7;
    const auto& last = rep.rows.back();
    const double orho = last.order_rho.value_or(0.0), ou = last.order_u.value_or(0.0);
    ok = ok && orho >= bound && ou >= bound;
    os << "p=" << rep.degree << ": order rho " << fix(orho) << ", u " << fix(ou) << " (>= " << bound << "); ratios to table";
    for (const auto& row : rep.rows) {
      const auto [tr, tu] = table.at({rep.degree, row.n});
      const double rr = row.err_rho / tr, ru = row.err_u / tu;
      const bool in = rr >= 1.0 / 3.0 && rr <= 3.0 && ru >= 1.0 / 3.0 && ru <= 3.0;
      ok = ok && in;
      os << " n=" << row.n << " rho " << fix(rr) << " u " << fix(ru) << (in ? "" : " [outside 3x]");
    }
    os << "; ";
  }
  return {ok, os.str()};
}

Outcome conservation() {
  double mass = 0.0, energy = 0.0;
  for (const auto& rep : tg_study())
    for (const auto& row : rep.rows) {
      mass = std::max(mass, row.mass_drift);
      energy = std::max(energy, row.relative_energy_drift);
    }
  return {mass <= 1e-12 && energy <= 1e-11,
          "taylor-green runs: max |dM| = " + sci(mass) + " (<= 1e-12), max |dE|/E = " + sci(energy) + " (<= 1e-11)"};
}

Outcome div_b() {
  const ScenarioSpec ot = orszag_tang();
  const DeRham2D c = build_complex(ot, 64, 64, 2);
  SolverParams params;
  const int n = 500;
  const RunResult r = run(c, ot.eos, ot.gravity, initial_state(c, ot), 1e-3, n, params,
                          [](int k, const MHDState&, const InvariantsRow& row) {
                            if (k % 100 == 0) progress("orszag-tang step " + std::to_string(k) + " divB " + sci(row.div_B_l2));
                          });
  const Drifts d = drifts(r.rows);
  const double ebound = n * params.nonlinear_tol * 100;
  return {d.div_b <= 1e-12 && d.mass <= 1e-12 && d.entropy <= 1e-12 && d.energy <= ebound,
          "orszag-tang 64^2 p=2 to t=0.5: max |div B| = " + sci(d.div_b) + " (<= 1e-12), |dM| = " + sci(d.mass) +
              ", |dS| = " + sci(d.entropy) + " (<= 1e-12), |dE|/E = " + sci(d.energy) + " (<= " + sci(ebound) + ")"};
}

Outcome reversibility() {
  const ScenarioSpec sf = shear_layer_full();
  const DeRham2D c = build_complex(sf, 64, 32, 1);
  const MHDState s0 = initial_state(c, sf);
  const int n = 1000;  // T = 0.2 with dt = 2e-4
  std::vector<double> errs;
  std::ostringstream os;
  os << "shear-full 64x32 p=1, 1000 steps each way:";
  bool ok = true;
  for (double tol : {1e-8, 1e-10, 1e-12}) {
    SolverParams params;
    params.nonlinear_tol = tol;
    const RunResult fwd = run(c, sf.eos, sf.gravity, s0, 2e-4, n, params);
    const RunResult back = reverse_run(c, sf.eos, sf.gravity, fwd.final_state, 2e-4, n, params);
    const ReturnError e = return_error(c, s0, back.final_state);
    errs.push_back(std::max(e.rho_l2, e.u_l2));
    os << " tol " << sci(tol) << ": rho " << sci(e.rho_l2) << " u " << sci(e.u_l2) << " (max " << sci(e.rho_max)
       << "/" << sci(e.u_max) << ");";
    progress("tol " + sci(tol) + " return error " + sci(errs.back()));
    if (tol == 1e-12) ok = ok && e.rho_l2 <= 1e-6 && e.u_l2 <= 1e-6;
  }
  const bool monotone = errs[1] < errs[0] && errs[2] < errs[1];
  os << (monotone ? " decreasing with tol" : " NOT decreasing with tol");
  return {ok && monotone, os.str()};
}

Outcome alfven() {
  const ScenarioSpec al = alfven_inplane();
  const DeRham2D c = build_complex(al, 32, 4, 2);
  const double dt = 5e-3, va = 1.0;
  const int n = static_cast<int>(std::lround(1.0 / va / dt));
  const int m = 64;
  Matrix pts(m, 2);
  for (int j = 0; j < m; ++j) pts.row(j) << (j + 0.5) / m, 0.5 * al.lengths[1];
  std::vector<double> t, phase;
  std::vector<double> amp;
  auto record = [&](int, const MHDState& st, const InvariantsRow&) {
    const Matrix b = eval_field(c, st.B, pts);
    std::complex<double> z = 0.0;
    for (int j = 0; j < m; ++j) z += b(j, 1) * std::polar(1.0, -2 * pi * pts(j, 0));
    z /= static_cast<double>(m);
    double ph = std::arg(z);
    if (!phase.empty()) ph += 2 * pi * std::round((phase.back() - ph) / (2 * pi));
    t.push_back(st.time);
    phase.push_back(ph);
    amp.push_back(std::abs(z));
  };
  run(c, al.eos, al.gravity, initial_state(c, al), dt, n, {}, record);
  // least-squares slope of the unwrapped phase
  double st = 0, sp = 0, stt = 0, stp = 0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    st += t[k];
    sp += phase[k];
    stt += t[k] * t[k];
    stp += t[k] * phase[k];
  }
  const double nn = static_cast<double>(t.size());
  const double slope = (nn * stp - st * sp) / (nn * stt - st * st);
  const double speed = std::abs(slope) / (2 * pi);
  const double damping = 1.0 - amp.back() / amp.front();
  const double rel = std::abs(speed - va) / va;
  return {rel <= 0.02 && damping <= 0.01,
          "alfven 32 cells p=2, one period: phase speed " + fix(speed) + " (v_A = 1, error " + sci(rel) +
              " <= 2e-2), travelling " + (slope > 0 ? "-x" : "+x") + ", amplitude loss " + sci(damping) +
              " (<= 1e-2)"};
}

Outcome discrete_gradient() {
  const double b = discrete_gradient_defect(EquationOfState::barotropic(), 10000);
  const double g = discrete_gradient_defect(EquationOfState::ideal_gas(1.4), 10000);
  const double h = discrete_gradient_defect(EquationOfState::ideal_gas(5.0 / 3.0), 10000, 23);
  const double m = std::max({b, g, h});
  return {m <= 1e-12, "1e4 pairs per EOS: barotropic " + sci(b) + ", ideal gas 7/5 " + sci(g) + ", 5/3 " + sci(h) +
                          " (<= 1e-12 relative)"};
}

Outcome residual_oracle() {
  const EquationOfState eos = EquationOfState::ideal_gas(1.4);
  double err = 0.0, scale = 0.0;
  int entries = 0;
  for (Boundary by : {Boundary::periodic, Boundary::clamped}) {
    const DeRham2D c = build_derham(8, 8, 1, 1.0, 1.0, Boundary::periodic, by);
    const MHDState k0 = oracle::random_state(c, 1), k1 = oracle::random_state(c, 2);
    GravitySpec grav{[](double x, double y) { return -y + 0.1 * x; }};
    const double dt = 0.05;
    const Vector fast = momentum_residual(c, eos, grav, k0, k1, dt);
    for (int j = 0; j < fast.size(); ++j) {
      const double slow = oracle::slow_residual_entry(c, eos, grav, k0, k1, dt, j);
      err = std::max(err, std::abs(fast(j) - slow));
      scale = std::max(scale, std::abs(slow));
      ++entries;
    }
  }
  const double rel = err / std::max(1.0, scale);
  return {rel <= 1e-11, "8^2 p=1 random states, " + std::to_string(entries) + " entries: max difference " + sci(err) +
                            " (scale " + sci(scale) + ", relative " + sci(rel) + " <= 1e-11)"};
}

Outcome smoke() {
  std::ostringstream os;
  bool ok = true;
  double w[2];
  int idx = 0;
  for (double b0 : {0.0, 0.4}) {
    const ScenarioSpec mk = magnetized_khi(b0);
    const DeRham2D c = build_complex(mk);
    const int n = static_cast<int>(std::lround(mk.t_final / mk.dt));
    const RunResult r = run(c, mk.eos, mk.gravity, initial_state(c, mk), mk.dt, n, {},
                            [&](int k, const MHDState&, const InvariantsRow&) {
                              if (k % 1000 == 0) progress("mkhi B0=" + fix(b0) + " step " + std::to_string(k));
                            });
    w[idx++] = max_abs_vorticity(c, r.final_state.u);
  }
  ok = ok && w[1] < w[0];
  os << "mkhi 32x64 at t=2: max|w| " << fix(w[0]) << " (B0=0) vs " << fix(w[1]) << " (B0=0.4); ";

  const ScenarioSpec rt = rayleigh_taylor();
  const DeRham2D c = build_complex(rt);
  const int n = static_cast<int>(std::lround(rt.t_final / rt.dt));
  SolverParams params;
  try {
    const RunResult r = run(c, rt.eos, rt.gravity, initial_state(c, rt), rt.dt, n, params,
                            [](int k, const MHDState&, const InvariantsRow&) {
                              if (k % 500 == 0) progress("rayleigh-taylor step " + std::to_string(k));
                            });
    const Drifts d = drifts(r.rows);
    const double bound = n * params.nonlinear_tol * 100;
    ok = ok && d.energy <= bound;
    os << "rayleigh-taylor 16x64 to t=2: |dE|/E = " << sci(d.energy) << " (<= " << sci(bound)
       << ", potential energy included), max|w| " << fix(max_abs_vorticity(c, r.final_state.u));
  } catch (const std::exception& e) {
    ok = false;
    os << "rayleigh-taylor failed: " << e.what();
  }
  return {ok, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> only;
  app.add_option("--only", only, "Criteria to run (default: all)")->delimiter(',')->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"structural exactness", structural},
      {"commuting diagram", commuting},
      {"convergence (taylor-green)", convergence},
      {"conservation (taylor-green)", conservation},
      {"div B (orszag-tang)", div_b},
      {"reversibility (shear-full)", reversibility},
      {"alfven coupling", alfven},
      {"discrete-gradient identity", discrete_gradient},
      {"momentum-residual oracle", residual_oracle},
      {"smoke: mkhi and rayleigh-taylor", smoke},
  };
  const std::set<int> selected(only.begin(), only.end());
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %d: %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
