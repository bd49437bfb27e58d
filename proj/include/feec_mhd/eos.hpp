#pragma once

#include <utility>

namespace feec_mhd {

enum class EosKind { barotropic, ideal_gas };

/// Specific internal energy e(rho, s): rho / 2 (barotropic) or
/// rho^(gamma-1) exp(s / rho) with s an entropy density (ideal gas).
struct EquationOfState {
  EosKind kind = EosKind::barotropic;
  double gamma = 1.4;

  static EquationOfState barotropic() { return {EosKind::barotropic, 1.4}; }
  static EquationOfState ideal_gas(double gamma) { return {EosKind::ideal_gas, gamma}; }
};

double internal_energy(const EquationOfState& eos, double rho, double s);
/// (de/drho, de/ds).
std::pair<double, double> energy_partials(const EquationOfState& eos, double rho, double s);
/// p = rho (rho de/drho + s de/ds).
double pressure(const EquationOfState& eos, double rho, double s);

/// Secant coefficients with c_rho (rho1 - rho0) + c_s (s1 - s0) equal to
/// rho1 e(rho1, s1) - rho0 e(rho0, s0).
struct DiscreteGradient {
  double c_rho = 0.0;
  double c_s = 0.0;
};

DiscreteGradient discrete_gradient_coeffs(const EquationOfState& eos, double rho0, double rho1, double s0, double s1);

}  // namespace feec_mhd
