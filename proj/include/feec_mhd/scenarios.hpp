#pragma once

#include <array>
#include <string>
#include <vector>

#include "feec_mhd/model.hpp"

namespace feec_mhd {

struct ScenarioSpec {
  std::string name;
  std::array<double, 2> lengths{1.0, 1.0};
  std::array<double, 2> origin{0.0, 0.0};
  Boundary boundary_x = Boundary::periodic;
  Boundary boundary_y = Boundary::periodic;
  EquationOfState eos;
  GravitySpec gravity;
  ScalarFunction ux, uy, rho, s, bx, by;
  double dt = 1e-3;
  double t_final = 1.0;
  int nx = 16;
  int ny = 16;
  int degree = 2;
  std::string reference_setup;  // grid and step of the original large runs
};

ScenarioSpec taylor_green_barotropic();
ScenarioSpec shear_layer_barotropic();
ScenarioSpec shear_layer_full();
ScenarioSpec rayleigh_taylor();
ScenarioSpec alfven_inplane();
ScenarioSpec orszag_tang();
ScenarioSpec magnetized_khi(double b0);

/// CLI identifiers: taylor-green, shear-barotropic, shear-full,
/// rayleigh-taylor, alfven, orszag-tang, mkhi.
const std::vector<std::string>& scenario_names();
/// Throws std::invalid_argument for unknown names; `b0` is used by mkhi only.
ScenarioSpec scenario_by_name(const std::string& name, double b0 = 0.0);

DeRham2D build_complex(const ScenarioSpec& spec, int nx, int ny, int degree);
inline DeRham2D build_complex(const ScenarioSpec& spec) { return build_complex(spec, spec.nx, spec.ny, spec.degree); }

/// Projected initial fields at time 0; velocity DOFs normal to clamped walls
/// are zeroed.
MHDState initial_state(const DeRham2D& complex, const ScenarioSpec& spec);

}  // namespace feec_mhd
