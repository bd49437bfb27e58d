#include "feec_mhd/checks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "feec_mhd/integrator.hpp"
#include "feec_mhd/lie.hpp"
#include "feec_mhd/scenarios.hpp"

namespace feec_mhd {

namespace {

constexpr double pi = std::numbers::pi;

double max_abs(const Vector& v) { return v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>(); }

}  // namespace

double complex_defect(const DeRham2D& complex) {
  const SparseMatrix dd = complex.d1() * complex.d0();
  double m = 0.0;
  for (int k = 0; k < dd.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(dd, k); it; ++it) m = std::max(m, std::abs(it.value()));
  return m;
}

double hat_identity_defect(const DeRham2D& complex, int samples, std::uint32_t seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double m = 0.0;
  for (int k = 0; k < samples; ++k) {
    FieldCoeffs u{SpaceTag::velocity, Vector(complex.dim(SpaceTag::velocity))};
    for (auto& x : u.coeffs) x = dist(gen);
    m = std::max(m, max_abs(hat_of_advection(complex, u).coeffs - u.coeffs));
  }
  return m;
}

double commuting_defect(const DeRham2D& complex) {
  const auto [lx, ly] = complex.lengths();
  const auto [ox, oy] = complex.origin();
  const double kx = 2 * pi / lx, ky = 2 * pi / ly;
  double m = 0.0;

  // 1-forms: pairs (F, div F)
  struct Flux {
    ScalarFunction fx, fy, div;
  };
  const std::vector<Flux> fluxes = {
      {[=](double x, double y) { return std::sin(kx * (x - ox)) * std::cos(ky * (y - oy)); },
       [=](double x, double y) { return std::cos(kx * (x - ox)) * std::sin(ky * (y - oy)); },
       [=](double x, double y) { return (kx + ky) * std::cos(kx * (x - ox)) * std::cos(ky * (y - oy)); }},
      {[=](double x, double y) { return std::exp(std::sin(kx * (x - ox))) * std::cos(2 * ky * (y - oy)); },
       [=](double x, double) { return std::cos(3 * kx * (x - ox)); },
       [=](double x, double y) {
         return kx * std::cos(kx * (x - ox)) * std::exp(std::sin(kx * (x - ox))) * std::cos(2 * ky * (y - oy));
       }},
      {[](double, double) { return 0.7; }, [](double, double) { return -1.1; }, [](double, double) { return 0.0; }},
  };
  for (const auto& f : fluxes) {
    const Vector lhs = apply_d1(complex, project1(complex, f.fx, f.fy)).coeffs;
    m = std::max(m, max_abs(lhs - project2(complex, f.div).coeffs));
  }

  // 0-forms: pairs (g, grad g)
  struct Scalar {
    ScalarFunction g, gx, gy;
  };
  const std::vector<Scalar> scalars = {
      {[=](double x, double y) { return std::sin(kx * (x - ox) + 0.3) * std::exp(std::cos(ky * (y - oy))); },
       [=](double x, double y) { return kx * std::cos(kx * (x - ox) + 0.3) * std::exp(std::cos(ky * (y - oy))); },
       [=](double x, double y) {
         return -ky * std::sin(kx * (x - ox) + 0.3) * std::sin(ky * (y - oy)) * std::exp(std::cos(ky * (y - oy)));
       }},
      {[=](double x, double y) { return std::cos(2 * kx * (x - ox)) + std::sin(ky * (y - oy)); },
       [=](double x, double) { return -2 * kx * std::sin(2 * kx * (x - ox)); },
       [=](double, double y) { return ky * std::cos(ky * (y - oy)); }},
  };
  for (const auto& s : scalars) {
    const Vector lhs = apply_d0(complex, project0(complex, s.g)).coeffs;
    const ScalarFunction minus_gx = [&](double x, double y) { return -s.gx(x, y); };
    m = std::max(m, max_abs(lhs - project1(complex, s.gy, minus_gx).coeffs));
  }
  return m;
}

double discrete_gradient_defect(const EquationOfState& eos, int samples, std::uint32_t seed) {
  std::mt19937 gen(seed);
  // far pairs stay where s/rho is moderate: the secant mixes (rho0, s1) and
  // (rho1, s0), whose energies blow up like exp(s/rho)
  std::uniform_real_distribution<double> ur(0.2, 3.0), us(-1.0, 1.0);
  std::uniform_real_distribution<double> wr(0.05, 5.0), ws(-2.0, 2.0), ul(-15.0, -1.0);
  double m = 0.0;
  for (int k = 0; k < samples; ++k) {
    double r0 = ur(gen), s0 = us(gen), r1 = ur(gen), s1 = us(gen);
    if (k % 2 == 1) {
      // nearby states, down to a few ulps apart
      r0 = wr(gen);
      s0 = ws(gen);
      r1 = r0 * (1.0 + std::pow(10.0, ul(gen)));
      s1 = s0 + std::pow(10.0, ul(gen));
    }
    const auto dg = discrete_gradient_coeffs(eos, r0, r1, s0, s1);
    const double lhs = dg.c_rho * (r1 - r0) + dg.c_s * (s1 - s0);
    const double f1 = r1 * internal_energy(eos, r1, s1), f0 = r0 * internal_energy(eos, r0, s0);
    m = std::max(m, std::abs(lhs - (f1 - f0)) / std::max({1.0, std::abs(f1), std::abs(f0)}));
  }
  return m;
}

std::vector<CheckResult> property_suite() {
  std::vector<CheckResult> out;
  for (int n : {8, 16})
    for (int p : {1, 2}) {
      const DeRham2D c = build_derham(n, n, p, 1.0, 1.0, Boundary::periodic, Boundary::periodic);
      const std::string tag = std::to_string(n) + "^2 p=" + std::to_string(p);
      out.push_back({"D1 D0 = 0 (" + tag + ")", complex_defect(c), 1e-14});
      out.push_back({"hat(A_u) = u (" + tag + ")", hat_identity_defect(c, 20), 1e-13});
    }
  {
    const DeRham2D c = build_derham(16, 16, 2, 1.0, 1.0, Boundary::periodic, Boundary::periodic);
    out.push_back({"commuting projections (16^2 p=2)", commuting_defect(c), 1e-10});
  }
  out.push_back({"discrete gradient, barotropic", discrete_gradient_defect(EquationOfState::barotropic(), 10000), 1e-12});
  out.push_back({"discrete gradient, ideal gas", discrete_gradient_defect(EquationOfState::ideal_gas(1.4), 10000), 1e-12});

  SolverParams params;
  {
    const ScenarioSpec spec = orszag_tang();
    const DeRham2D c = build_complex(spec, 8, 8, 1);
    const MHDState s0 = initial_state(c, spec);
    const double dt = 1e-3;
    const RunResult r = run(c, spec.eos, spec.gravity, s0, dt, 10, params);
    double dm = 0, ds = 0, de = 0, db = 0;
    const auto& f = r.rows.front();
    for (const auto& row : r.rows) {
      dm = std::max(dm, std::abs(row.total_mass - f.total_mass) / std::abs(f.total_mass));
      ds = std::max(ds, std::abs(row.total_entropy - f.total_entropy) / std::abs(f.total_entropy));
      de = std::max(de, std::abs(row.total_energy - f.total_energy) / std::abs(f.total_energy));
      db = std::max(db, row.div_B_l2);
    }
    out.push_back({"mass drift, Orszag-Tang 10 steps", dm, 1e-12});
    out.push_back({"entropy drift, Orszag-Tang 10 steps", ds, 1e-12});
    out.push_back({"energy drift, Orszag-Tang 10 steps", de, 10 * params.nonlinear_tol * 100});
    out.push_back({"div B, Orszag-Tang 10 steps", db, 1e-12});

    const auto [s1, rep1] = step(c, spec.eos, spec.gravity, s0, dt, params);
    const auto [back, rep2] = step(c, spec.eos, spec.gravity, s1, -dt, params);
    const ReturnError e = return_error(c, s0, back);
    out.push_back({"one step forward and back", std::max({e.rho_max, e.u_max, e.s_max, e.B_max}),
                   10 * params.nonlinear_tol});
  }
  {
    const DeRham2D c = build_derham(8, 8, 2, 1.0, 1.0, Boundary::periodic, Boundary::periodic);
    MHDState s;
    s.u = project_velocity(c, [](double, double) { return 0.3; }, [](double, double) { return -0.2; });
    s.rho = project2(c, [](double, double) { return 1.0; });
    s.s = project2(c, [](double, double) { return 0.1; });
    s.B = project1(c, [](double, double) { return 0.5; }, [](double, double) { return 0.25; });
    const EquationOfState eos = EquationOfState::ideal_gas(1.4);
    const auto [s1, rep] = step(c, eos, GravitySpec{}, s, 1e-2, params);
    const ReturnError e = return_error(c, s, s1);
    out.push_back({"free stream preserved", std::max({e.rho_max, e.u_max, e.s_max, e.B_max}), 1e-12});
  }
  return out;
}

}  // namespace feec_mhd
