#include "feec_mhd/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace feec_mhd {

namespace {

constexpr double pi = std::numbers::pi;

ScalarFunction constant(double c) {
  return [c](double, double) { return c; };
}

double shear_profile(double y) {
  const double delta = 1.0 / 15.0;
  return -std::tanh((y - 0.5) / delta) + std::tanh((y + 0.5) / delta);
}

ScenarioSpec shear_base(std::string name) {
  ScenarioSpec s;
  s.name = std::move(name);
  s.lengths = {1.0, 2.0};
  s.origin = {0.0, -1.0};
  s.ux = [](double, double y) { return 0.5 * (shear_profile(y) - 1.0); };
  s.uy = [](double x, double) { return 0.1 * std::sin(2 * pi * x); };
  s.bx = constant(0.0);
  s.by = constant(0.0);
  return s;
}

}  // namespace

ScenarioSpec taylor_green_barotropic() {
  ScenarioSpec s;
  s.name = "taylor-green";
  s.lengths = {pi, pi};
  s.eos = EquationOfState::barotropic();
  s.rho = constant(1.0);
  s.s = constant(0.0);
  s.ux = [](double x, double y) { return 1.0 - 0.1 * std::cos(2 * x) * std::sin(2 * y); };
  s.uy = [](double x, double y) { return 1.0 + 0.1 * std::cos(2 * y) * std::sin(2 * x); };
  s.bx = constant(0.0);
  s.by = constant(0.0);
  s.dt = 1e-3;
  s.t_final = 1.0;
  s.nx = s.ny = 16;
  s.degree = 2;
  s.reference_setup = "dt = 1e-4, grids h = pi/2^3 .. pi/2^6, reference h = pi/2^7";
  return s;
}

ScenarioSpec shear_layer_barotropic() {
  ScenarioSpec s = shear_base("shear-barotropic");
  s.eos = EquationOfState::barotropic();
  s.rho = constant(1.0);
  s.s = constant(0.0);
  s.dt = 1e-3;
  s.t_final = 1.0;
  s.nx = 32;
  s.ny = 64;
  s.degree = 1;
  s.reference_setup = "512 x 256, p = 2, dt = 5e-4, t = 4";
  return s;
}

ScenarioSpec shear_layer_full() {
  ScenarioSpec s = shear_base("shear-full");
  const double gamma = 7.0 / 5.0;
  s.eos = EquationOfState::ideal_gas(gamma);
  s.rho = [](double, double y) { return 0.5 + 0.75 * shear_profile(y); };
  s.s = [gamma](double, double y) {
    const double r = 0.5 + 0.75 * shear_profile(y);
    return -r * (std::log(gamma - 1.0) + gamma * std::log(r));
  };
  s.dt = 2e-4;
  s.t_final = 0.2;
  s.nx = 64;
  s.ny = 32;
  s.degree = 1;
  s.reference_setup = "512 x 256, p = 1, dt = 2e-4, t = 2";
  return s;
}

ScenarioSpec rayleigh_taylor() {
  ScenarioSpec s;
  s.name = "rayleigh-taylor";
  s.lengths = {0.25, 1.0};
  s.boundary_y = Boundary::clamped;
  const double gamma = 7.0 / 5.0;
  s.eos = EquationOfState::ideal_gas(gamma);
  s.gravity.potential = [](double, double y) { return -y; };
  auto rho = [](double y) { return 1.5 - 0.1 * std::tanh((y - 0.5) / 0.02); };
  auto p = [](double y) { return 1.5 * y + 1.25 + 0.1 * (0.5 - y) * std::tanh((y - 0.5) / 0.02); };
  s.rho = [rho](double, double y) { return rho(y); };
  s.s = [rho, p, gamma](double, double y) {
    const double r = rho(y);
    return r * std::log(p(y) / ((gamma - 1.0) * std::pow(r, gamma)));
  };
  s.ux = constant(0.0);
  s.uy = [rho, p, gamma](double x, double y) {
    return -0.025 * std::sqrt(gamma * p(y) / rho(y)) * std::cos(8 * pi * x) * std::exp(-(y - 0.5) * (y - 0.5) / 0.09);
  };
  s.bx = constant(0.0);
  s.by = constant(0.0);
  s.dt = 1e-3;
  s.t_final = 2.0;
  s.nx = 16;
  s.ny = 64;
  s.degree = 1;
  s.reference_setup = "128 x 512, p = 1, dt = 2e-4, t = 4";
  return s;
}

ScenarioSpec alfven_inplane() {
  ScenarioSpec s;
  s.name = "alfven";
  s.lengths = {1.0, 0.125};
  const double gamma = 5.0 / 3.0;
  s.eos = EquationOfState::ideal_gas(gamma);
  s.rho = constant(1.0);
  s.s = constant(std::log(0.1 / (gamma - 1.0)));
  s.ux = constant(0.0);
  s.uy = [](double x, double) { return 0.01 * std::sin(2 * pi * x); };
  s.bx = constant(1.0);
  s.by = [](double x, double) { return 0.01 * std::sin(2 * pi * x); };
  s.dt = 5e-3;
  s.t_final = 1.0;
  s.nx = 32;
  s.ny = 4;
  s.degree = 2;
  s.reference_setup = "oblique circularly polarized wave, N = 16, one and 75 periods";
  return s;
}

ScenarioSpec orszag_tang() {
  ScenarioSpec s;
  s.name = "orszag-tang";
  s.lengths = {2 * pi, 2 * pi};
  const double gamma = 5.0 / 3.0;
  s.eos = EquationOfState::ideal_gas(gamma);
  s.rho = constant(gamma * gamma);
  s.s = constant(gamma * gamma * std::log(gamma / ((gamma - 1.0) * std::pow(gamma, 2 * gamma))));
  s.ux = [](double, double y) { return -std::sin(y); };
  s.uy = [](double x, double) { return std::sin(x); };
  s.bx = [](double, double y) { return -std::sin(y); };
  s.by = [](double x, double) { return std::sin(2 * x); };
  s.dt = 1e-3;
  s.t_final = 0.5;
  s.nx = s.ny = 64;
  s.degree = 2;
  s.reference_setup = "smooth window only; shocks form later";
  return s;
}

ScenarioSpec magnetized_khi(double b0) {
  ScenarioSpec s = shear_base("mkhi");
  const double gamma = 7.0 / 5.0;
  s.eos = EquationOfState::ideal_gas(gamma);
  s.rho = constant(1.0);
  s.s = constant(-std::log(gamma - 1.0));
  s.bx = constant(b0);
  s.dt = 5e-4;
  s.t_final = 2.0;
  s.nx = 32;
  s.ny = 64;
  s.degree = 1;
  s.reference_setup = "256 x 512, p = 1, dt = 5e-4, t = 2, B0 in {0, 0.2, 0.4, 0.6}";
  return s;
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"taylor-green", "shear-barotropic", "shear-full", "rayleigh-taylor",
                                                 "alfven",       "orszag-tang",      "mkhi"};
  return names;
}

ScenarioSpec scenario_by_name(const std::string& name, double b0) {
  if (name == "taylor-green") return taylor_green_barotropic();
  if (name == "shear-barotropic") return shear_layer_barotropic();
  if (name == "shear-full") return shear_layer_full();
  if (name == "rayleigh-taylor") return rayleigh_taylor();
  if (name == "alfven") return alfven_inplane();
  if (name == "orszag-tang") return orszag_tang();
  if (name == "mkhi") return magnetized_khi(b0);
  throw std::invalid_argument("unknown scenario '" + name + "'");
}

DeRham2D build_complex(const ScenarioSpec& spec, int nx, int ny, int degree) {
  return build_derham(nx, ny, degree, spec.lengths[0], spec.lengths[1], spec.boundary_x, spec.boundary_y, spec.origin);
}

MHDState initial_state(const DeRham2D& complex, const ScenarioSpec& spec) {
  MHDState st;
  st.time = 0.0;
  st.u = project_velocity(complex, spec.ux, spec.uy);
  const auto& mask = complex.velocity_constraints();
  for (Eigen::Index i = 0; i < st.u.coeffs.size(); ++i)
    if (mask[i]) st.u.coeffs(i) = 0.0;
  st.rho = project2(complex, spec.rho);
  st.s = project2(complex, spec.s);
  st.B = project1(complex, spec.bx, spec.by);
  return st;
}

}  // namespace feec_mhd
