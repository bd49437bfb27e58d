#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "feec_mhd/diagnostics.hpp"
#include "feec_mhd/model.hpp"

namespace feec_mhd {

struct SolverParams {
  double nonlinear_tol = 1e-10;  // infinity norm of the combined residual
  int max_picard = 50;
  double linear_tol = 1e-13;  // relative, for all inner linear solves
  int anderson_depth = 0;     // 0 = plain Picard
  int gmres_restart = 60;
  int max_linear_iterations = 3000;
};

struct StepReport {
  int picard_iterations = 0;
  double final_residual = 0.0;
  int linear_iterations_total = 0;
  bool positivity_floor_hit = false;
  std::vector<double> residual_history;
};

/// Picard iteration did not reach the tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> history, int step = -1)
      : std::runtime_error(what), history_(std::move(history)), step_(step) {}
  const std::vector<double>& residual_history() const { return history_; }
  int step() const { return step_; }

 private:
  std::vector<double> history_;
  int step_;
};

/// Worker count for the three transport solves of a step, from
/// FEEC_MHD_THREADS (default 1).
int worker_count();

/// One reversible midpoint step of size dt (negative dt runs backwards).
std::pair<MHDState, StepReport> step(const DeRham2D& complex, const EquationOfState& eos, const GravitySpec& gravity,
                                     const MHDState& state, double dt, const SolverParams& params = {});

using StepHook = std::function<void(int, const MHDState&, const InvariantsRow&)>;

struct RunResult {
  MHDState final_state;
  std::vector<InvariantsRow> rows;  // n_steps + 1 rows, including the initial state
  std::vector<StepReport> reports;
};

RunResult run(const DeRham2D& complex, const EquationOfState& eos, const GravitySpec& gravity, const MHDState& state0,
              double dt, int n_steps, const SolverParams& params = {}, const StepHook& hook = {});

/// Runs n_steps with -dt starting from state_T.
RunResult reverse_run(const DeRham2D& complex, const EquationOfState& eos, const GravitySpec& gravity,
                      const MHDState& state_T, double dt, int n_steps, const SolverParams& params = {},
                      const StepHook& hook = {});

struct ReturnError {
  double rho_l2 = 0.0;  // relative L2 errors
  double u_l2 = 0.0;
  double s_l2 = 0.0;
  double B_l2 = 0.0;
  double rho_max = 0.0;  // max coefficient differences
  double u_max = 0.0;
  double s_max = 0.0;
  double B_max = 0.0;
};

/// Distance between two states on the same complex (e.g. before a forward
/// run and after the matching reverse run).
ReturnError return_error(const DeRham2D& complex, const MHDState& reference, const MHDState& other);

}  // namespace feec_mhd
