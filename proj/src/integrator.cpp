#include "feec_mhd/integrator.hpp"

#include <cmath>
#include <cstdlib>
#include <deque>
#include <future>
#include <sstream>

#include "feec_mhd/krylov.hpp"
#include "feec_mhd/lie.hpp"

namespace feec_mhd {

namespace {

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

struct TransportSolve {
  Vector c1, dc;
  double residual = 0.0;
  int iterations = 0;
};

// Midpoint transport (c1 - c0)/dt + A (c0 + c1)/2 = 0. The Krylov solution is
// followed by one explicit flux-form update c1 = c0 - dt A cm, so that c1 - c0
// lies exactly in the range of the divergence (exact mass, entropy and div B).
// The residual uses the increment dc, not the rounded difference c1 - c0.
TransportSolve solve_transport(const AdvectionOperator& a, const Vector& c0, const Vector& guess, double dt,
                               const SolverParams& params) {
  TransportSolve out;
  const Vector ac0 = a.apply(c0);
  const Vector rhs = c0 - 0.5 * dt * ac0;
  const KrylovResult k = gmres([&](const Vector& x) { return Vector(x + 0.5 * dt * a.apply(x)); }, rhs, guess,
                               params.linear_tol, params.gmres_restart, params.max_linear_iterations);
  out.iterations = k.iterations;
  const Vector acm = 0.5 * (ac0 + a.apply(k.x));
  out.dc = -dt * acm;
  out.c1 = c0 + out.dc;
  const Vector acm_new = 0.5 * (ac0 + a.apply(out.c1));
  out.residual = (acm_new - acm).lpNorm<Eigen::Infinity>();
  return out;
}

void apply_mask(Vector& v, const std::vector<bool>& mask) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (mask[i]) v(i) = 0.0;
}

// Anderson mixing for the fixed-point map x -> g(x).
class Anderson {
 public:
  explicit Anderson(int depth) : depth_(depth) {}

  Vector next(const Vector& x, const Vector& gx) {
    const Vector f = gx - x;
    if (depth_ <= 0) return gx;
    if (has_prev_) {
      df_.push_back(f - f_prev_);
      dg_.push_back(gx - g_prev_);
      if (static_cast<int>(df_.size()) > depth_) {
        df_.pop_front();
        dg_.pop_front();
      }
    }
    f_prev_ = f;
    g_prev_ = gx;
    has_prev_ = true;
    if (df_.empty()) return gx;
    Matrix F(f.size(), df_.size()), G(f.size(), dg_.size());
    for (std::size_t k = 0; k < df_.size(); ++k) {
      F.col(k) = df_[k];
      G.col(k) = dg_[k];
    }
    const Vector gamma = F.colPivHouseholderQr().solve(f);
    return gx - G * gamma;
  }

 private:
  int depth_;
  bool has_prev_ = false;
  Vector f_prev_, g_prev_;
  std::deque<Vector> df_, dg_;
};

}  // namespace

int worker_count() {
  const char* env = std::getenv("FEEC_MHD_THREADS");
  if (env == nullptr) return 1;
  const int n = std::atoi(env);
  return n >= 1 ? n : 1;
}

std::pair<MHDState, StepReport> step(const DeRham2D& complex, const EquationOfState& eos, const GravitySpec& gravity,
                                     const MHDState& state, double dt, const SolverParams& params) {
  if (dt == 0.0) throw std::invalid_argument("step: dt must be non-zero");
  if (!(params.nonlinear_tol > 0.0) || !(params.linear_tol > 0.0) || params.max_picard < 1)
    throw std::invalid_argument("step: invalid solver parameters");
  const auto& mask = complex.velocity_constraints();
  const Matrix phi = gravity_samples(complex, gravity);
  const bool parallel = worker_count() > 1;

  MHDState next = state;
  next.time = state.time + dt;
  // iterate on the velocity increment; masked entries cancel u0 exactly
  Vector du = Vector::Zero(state.u.coeffs.size());
  for (Eigen::Index i = 0; i < du.size(); ++i)
    if (mask[i]) du(i) = -state.u.coeffs(i);
  next.u.coeffs = state.u.coeffs + du;
  StepReport report;
  Anderson mixer(params.anderson_depth);

  for (int it = 1; it <= params.max_picard; ++it) {
    const FieldCoeffs um{SpaceTag::velocity, 0.5 * (state.u.coeffs + next.u.coeffs)};
    const AdvectionOperator a2(complex, um, FormKind::dens2);
    const AdvectionOperator a1(complex, um, FormKind::flux1);

    TransportSolve rho, s, b;
    if (parallel) {
      auto fs = std::async(std::launch::async, [&] { return solve_transport(a2, state.s.coeffs, next.s.coeffs, dt, params); });
      auto fb = std::async(std::launch::async, [&] { return solve_transport(a1, state.B.coeffs, next.B.coeffs, dt, params); });
      rho = solve_transport(a2, state.rho.coeffs, next.rho.coeffs, dt, params);
      s = fs.get();
      b = fb.get();
    } else {
      rho = solve_transport(a2, state.rho.coeffs, next.rho.coeffs, dt, params);
      s = solve_transport(a2, state.s.coeffs, next.s.coeffs, dt, params);
      b = solve_transport(a1, state.B.coeffs, next.B.coeffs, dt, params);
    }
    next.rho.coeffs = rho.c1;
    next.s.coeffs = s.c1;
    next.B.coeffs = b.c1;
    report.linear_iterations_total += rho.iterations + s.iterations + b.iterations;

    Vector r = momentum_residual(complex, eos, gravity, state, next, rho.dc, du, dt, &phi);
    apply_mask(r, mask);
    const WeightedVelocityMass mass(complex, next.rho);
    const double momentum = r.cwiseQuotient(mass.diagonal()).lpNorm<Eigen::Infinity>();
    const double residual = std::max({momentum, rho.residual, s.residual, b.residual});
    report.residual_history.push_back(residual);
    report.picard_iterations = it;
    report.final_residual = residual;
    if (residual <= params.nonlinear_tol) return {next, report};

    int cg_iterations = 0;
    const Vector delta = mass.solve(r, params.linear_tol, &cg_iterations);
    report.linear_iterations_total += cg_iterations;
    Vector du_new = mixer.next(du, du - dt * delta);
    for (Eigen::Index i = 0; i < du.size(); ++i)
      if (mask[i]) du_new(i) = -state.u.coeffs(i);
    du = du_new;
    next.u.coeffs = state.u.coeffs + du;
  }
  throw ConvergenceError("step: nonlinear iteration did not converge in " + std::to_string(params.max_picard) +
                             " iterations (last residual " + sci(report.final_residual) + ")",
                         report.residual_history);
}

RunResult run(const DeRham2D& complex, const EquationOfState& eos, const GravitySpec& gravity, const MHDState& state0,
              double dt, int n_steps, const SolverParams& params, const StepHook& hook) {
  if (n_steps < 0) throw std::invalid_argument("run: n_steps must be non-negative");
  RunResult out;
  out.final_state = state0;
  out.rows.push_back(invariants(complex, eos, gravity, state0));
  if (hook) hook(0, state0, out.rows.back());
  for (int k = 1; k <= n_steps; ++k) {
    try {
      auto [next, report] = step(complex, eos, gravity, out.final_state, dt, params);
      // the step size is exact; avoid accumulating roundoff in the clock
      next.time = state0.time + k * dt;
      out.final_state = std::move(next);
      out.reports.push_back(report);
    } catch (const ConvergenceError& e) {
      throw ConvergenceError("step " + std::to_string(k) + ": " + e.what(), e.residual_history(), k);
    } catch (const PositivityError& e) {
      throw PositivityError("step " + std::to_string(k) + ": " + e.what());
    }
    out.rows.push_back(invariants(complex, eos, gravity, out.final_state, out.reports.back().picard_iterations));
    if (hook) hook(k, out.final_state, out.rows.back());
  }
  return out;
}

RunResult reverse_run(const DeRham2D& complex, const EquationOfState& eos, const GravitySpec& gravity,
                      const MHDState& state_T, double dt, int n_steps, const SolverParams& params,
                      const StepHook& hook) {
  return run(complex, eos, gravity, state_T, -dt, n_steps, params, hook);
}

ReturnError return_error(const DeRham2D& complex, const MHDState& reference, const MHDState& other) {
  auto rel = [&](const FieldCoeffs& a, const FieldCoeffs& b) {
    const SparseMatrix& m = complex.mass(a.tag);
    const Vector d = b.coeffs - a.coeffs;
    const double num = std::sqrt(std::max(0.0, d.dot(m * d)));
    const double den = std::sqrt(std::max(0.0, a.coeffs.dot(m * a.coeffs)));
    return den > 0.0 ? num / den : num;
  };
  auto max_diff = [](const FieldCoeffs& a, const FieldCoeffs& b) {
    return a.coeffs.size() == 0 ? 0.0 : (a.coeffs - b.coeffs).lpNorm<Eigen::Infinity>();
  };
  ReturnError e;
  e.rho_l2 = rel(reference.rho, other.rho);
  e.u_l2 = rel(reference.u, other.u);
  e.s_l2 = rel(reference.s, other.s);
  e.B_l2 = rel(reference.B, other.B);
  e.rho_max = max_diff(reference.rho, other.rho);
  e.u_max = max_diff(reference.u, other.u);
  e.s_max = max_diff(reference.s, other.s);
  e.B_max = max_diff(reference.B, other.B);
  return e;
}

}  // namespace feec_mhd
