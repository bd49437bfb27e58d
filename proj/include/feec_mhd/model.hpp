#pragma once

#include <optional>

#include "feec_mhd/derham.hpp"
#include "feec_mhd/eos.hpp"

namespace feec_mhd {

struct MHDState {
  double time = 0.0;
  FieldCoeffs u;    // velocity
  FieldCoeffs rho;  // dens2
  FieldCoeffs s;    // dens2
  FieldCoeffs B;    // flux1
};

/// Optional gravitational potential; adds int rho phi to the energy.
struct GravitySpec {
  std::optional<ScalarFunction> potential;
  bool active() const { return potential.has_value(); }
};

struct EnergyParts {
  double kinetic = 0.0;
  double internal = 0.0;
  double magnetic = 0.0;
  double potential = 0.0;
  double total() const { return kinetic + internal + magnetic + potential; }
};

EnergyParts energy_parts(const DeRham2D& complex, const EquationOfState& eos, const GravitySpec& gravity,
                         const MHDState& state);
double total_energy(const DeRham2D& complex, const EquationOfState& eos, const GravitySpec& gravity,
                    const MHDState& state);

/// Potential sampled on the cell quadrature grid (zero without gravity).
Matrix gravity_samples(const DeRham2D& complex, const GravitySpec& gravity);

/// Weak momentum equation of the midpoint step tested against every velocity
/// basis function. Pairing with the midpoint velocity gives (E1 - E0) / dt
/// whenever the densities and the magnetic field obey the midpoint
/// transport equations. `phi` may hold precomputed gravity_samples.
Vector momentum_residual(const DeRham2D& complex, const EquationOfState& eos, const GravitySpec& gravity,
                         const MHDState& state_k, const MHDState& state_k1, double dt, const Matrix* phi = nullptr);

/// Same residual with the time difference built from given coefficient
/// increments drho = rho1 - rho0 and du = u1 - u0.
Vector momentum_residual(const DeRham2D& complex, const EquationOfState& eos, const GravitySpec& gravity,
                         const MHDState& state_k, const MHDState& state_k1, const Vector& drho, const Vector& du,
                         double dt, const Matrix* phi = nullptr);

}  // namespace feec_mhd
