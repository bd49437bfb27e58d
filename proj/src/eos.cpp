#include "feec_mhd/eos.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "feec_mhd/types.hpp"

namespace feec_mhd {

namespace {

void check_density(const EquationOfState& eos, double rho) {
  if (eos.kind == EosKind::ideal_gas && !(rho > 0.0))
    throw PositivityError("positivity loss: density " + std::to_string(rho) + " in the equation of state");
}

// F = rho e and its partials.
double energy_density(const EquationOfState& eos, double rho, double s) { return rho * internal_energy(eos, rho, s); }

double d_rho_energy_density(const EquationOfState& eos, double rho, double s) {
  const auto [er, es] = energy_partials(eos, rho, s);
  (void)es;
  return internal_energy(eos, rho, s) + rho * er;
}

double d_s_energy_density(const EquationOfState& eos, double rho, double s) {
  return rho * energy_partials(eos, rho, s).second;
}

constexpr double secant_threshold = 1e-10;

// F(rho1, s) - F(rho0, s) without cancellation.
double density_difference(const EquationOfState& eos, double rho0, double rho1, double s) {
  const double drho = rho1 - rho0;
  if (eos.kind == EosKind::barotropic) return 0.5 * drho * (rho1 + rho0);
  check_density(eos, rho1);
  return energy_density(eos, rho0, s) *
         std::expm1(eos.gamma * std::log1p(drho / rho0) - s * drho / (rho0 * rho1));
}

// F(rho, s1) - F(rho, s0) without cancellation.
double entropy_difference(const EquationOfState& eos, double rho, double s0, double s1) {
  if (eos.kind == EosKind::barotropic) return 0.0;
  return energy_density(eos, rho, s0) * std::expm1((s1 - s0) / rho);
}

}  // namespace

double internal_energy(const EquationOfState& eos, double rho, double s) {
  check_density(eos, rho);
  if (eos.kind == EosKind::barotropic) return 0.5 * rho;
  return std::pow(rho, eos.gamma - 1.0) * std::exp(s / rho);
}

std::pair<double, double> energy_partials(const EquationOfState& eos, double rho, double s) {
  check_density(eos, rho);
  if (eos.kind == EosKind::barotropic) return {0.5, 0.0};
  const double e = internal_energy(eos, rho, s);
  return {e * ((eos.gamma - 1.0) / rho - s / (rho * rho)), e / rho};
}

double pressure(const EquationOfState& eos, double rho, double s) {
  check_density(eos, rho);
  if (eos.kind == EosKind::barotropic) return 0.5 * rho * rho;
  return (eos.gamma - 1.0) * std::pow(rho, eos.gamma) * std::exp(s / rho);
}

DiscreteGradient discrete_gradient_coeffs(const EquationOfState& eos, double rho0, double rho1, double s0,
                                          double s1) {
  DiscreteGradient g;
  const double drho = rho1 - rho0;
  const double ds = s1 - s0;
  if (std::abs(drho) < secant_threshold * std::max(1.0, std::abs(rho0))) {
    const double rm = 0.5 * (rho0 + rho1);
    g.c_rho = 0.5 * (d_rho_energy_density(eos, rm, s1) + d_rho_energy_density(eos, rm, s0));
  } else {
    g.c_rho = 0.5 * (density_difference(eos, rho0, rho1, s1) + density_difference(eos, rho0, rho1, s0)) / drho;
  }
  if (eos.kind == EosKind::barotropic) return g;
  if (std::abs(ds) < secant_threshold * std::max(1.0, std::abs(s0))) {
    const double sm = 0.5 * (s0 + s1);
    g.c_s = 0.5 * (d_s_energy_density(eos, rho1, sm) + d_s_energy_density(eos, rho0, sm));
  } else {
    g.c_s = 0.5 * (entropy_difference(eos, rho1, s0, s1) + entropy_difference(eos, rho0, s0, s1)) / ds;
  }
  return g;
}

}  // namespace feec_mhd
