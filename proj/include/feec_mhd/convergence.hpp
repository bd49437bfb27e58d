#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "feec_mhd/integrator.hpp"
#include "feec_mhd/scenarios.hpp"

namespace feec_mhd {

/// log(err_prev / err) / log(h_prev / h); absent when either error is zero.
std::optional<double> observed_order(double err_prev, double err, double h_prev, double h);

struct ConvergenceRow {
  int n = 0;  // cells per direction
  double h = 0.0;
  double err_rho = 0.0;
  double err_u = 0.0;
  std::optional<double> order_rho;
  std::optional<double> order_u;
  double mass_drift = 0.0;            // max |M(t) - M(0)| over the run
  double relative_energy_drift = 0.0;  // max |E(t) - E(0)| / |E(0)|
  double seconds = 0.0;
};

struct ConvergenceReport {
  std::string scenario;
  int degree = 0;
  int reference_n = 0;
  std::vector<ConvergenceRow> rows;
};

/// Runs every (degree, grid) pair to t_final and measures L2 errors of rho and
/// u on the coarse quadrature points against a run on twice the finest grid
/// of the same degree.
std::vector<ConvergenceReport> convergence_study(const ScenarioSpec& spec, const std::vector<int>& degrees,
                                                 const std::vector<int>& grids, double dt, double t_final,
                                                 const SolverParams& params = {},
                                                 const std::function<void(const std::string&)>& log = {});

/// L2 distances of rho and u between a coarse state and a reference state on
/// another complex, sampled on the coarse quadrature points.
std::pair<double, double> state_distance(const DeRham2D& coarse, const MHDState& a, const DeRham2D& fine,
                                         const MHDState& b);

}  // namespace feec_mhd
