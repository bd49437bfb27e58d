#include "feec_mhd/diagnostics.hpp"

#include <cmath>

namespace feec_mhd {

namespace {

// Integral of a dens2 field as a compensated sum of coefficient times basis
// integral, so that conservation is not masked by summation roundoff.
double integrate_density(const DeRham2D& complex, const FieldCoeffs& f) {
  const Matrix basis = pair_block(complex, Factor::low, Factor::low, PointSet::cell, PointSet::cell, cell_weights(complex));
  double sum = 0.0, comp = 0.0;
  for (Eigen::Index k = 0; k < f.coeffs.size(); ++k) {
    const double y = basis.data()[k] * f.coeffs(k) - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace

const std::vector<std::string>& invariants_header() {
  static const std::vector<std::string> header = {
      "time",           "total_mass",      "total_entropy", "total_energy",      "kinetic_energy",
      "internal_energy", "magnetic_energy", "div_B_l2",      "picard_iterations", "potential_energy"};
  return header;
}

InvariantsRow invariants(const DeRham2D& complex, const EquationOfState& eos, const GravitySpec& gravity,
                         const MHDState& state, int picard_iterations) {
  InvariantsRow row;
  row.time = state.time;
  row.total_mass = integrate_density(complex, state.rho);
  row.total_entropy = integrate_density(complex, state.s);
  const EnergyParts e = energy_parts(complex, eos, gravity, state);
  row.kinetic_energy = e.kinetic;
  row.internal_energy = e.internal;
  row.magnetic_energy = e.magnetic;
  row.potential_energy = e.potential;
  row.total_energy = e.total();
  const Vector div = complex.d1() * state.B.coeffs;
  row.div_B_l2 = std::sqrt(std::max(0.0, div.dot(complex.mass(SpaceTag::dens2) * div)));
  row.picard_iterations = picard_iterations;
  return row;
}

ScalarFunction vorticity_field(const DeRham2D& complex, const FieldCoeffs& u) {
  if (u.tag != SpaceTag::velocity) throw std::invalid_argument("vorticity_field: expected a velocity field");
  return [&complex, u](double x, double y) {
    Matrix p(1, 2);
    p << x, y;
    const Matrix g = eval_field(complex, u, p, EvalKind::grad);
    return g(0, 2) - g(0, 1);
  };
}

ScalarFunction pressure_field(const DeRham2D& complex, const EquationOfState& eos, const MHDState& state) {
  return [&complex, eos, rho = state.rho, s = state.s](double x, double y) {
    Matrix p(1, 2);
    p << x, y;
    return pressure(eos, eval_field(complex, rho, p)(0, 0), eval_field(complex, s, p)(0, 0));
  };
}

double max_abs_vorticity(const DeRham2D& complex, const FieldCoeffs& u) {
  const PointSet c = PointSet::cell;
  const Matrix w = sample(complex, u, 1, c, c, 1, 0) - sample(complex, u, 0, c, c, 0, 1);
  return w.cwiseAbs().maxCoeff();
}

}  // namespace feec_mhd
