#pragma once

#include <string>
#include <vector>

#include "feec_mhd/model.hpp"

namespace feec_mhd {

struct InvariantsRow {
  double time = 0.0;
  double total_mass = 0.0;
  double total_entropy = 0.0;
  double total_energy = 0.0;
  double kinetic_energy = 0.0;
  double internal_energy = 0.0;
  double magnetic_energy = 0.0;
  double div_B_l2 = 0.0;
  int picard_iterations = 0;
  double potential_energy = 0.0;
};

/// CSV column names, in InvariantsRow field order.
const std::vector<std::string>& invariants_header();

InvariantsRow invariants(const DeRham2D& complex, const EquationOfState& eos, const GravitySpec& gravity,
                         const MHDState& state, int picard_iterations = 0);

/// d/dx u_y - d/dy u_x of the spline velocity. The returned callable refers
/// to `complex`, which must outlive it.
ScalarFunction vorticity_field(const DeRham2D& complex, const FieldCoeffs& u);

/// Pressure recomputed pointwise from the density and entropy fields.
ScalarFunction pressure_field(const DeRham2D& complex, const EquationOfState& eos, const MHDState& state);

/// Max |vorticity| over the cell quadrature points.
double max_abs_vorticity(const DeRham2D& complex, const FieldCoeffs& u);

}  // namespace feec_mhd
