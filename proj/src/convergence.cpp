#include "feec_mhd/convergence.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace feec_mhd {

std::optional<double> observed_order(double err_prev, double err, double h_prev, double h) {
  if (!(err_prev > 0.0) || !(err > 0.0) || h_prev == h) return std::nullopt;
  return std::log(err_prev / err) / std::log(h_prev / h);
}

std::pair<double, double> state_distance(const DeRham2D& coarse, const MHDState& a, const DeRham2D& fine,
                                         const MHDState& b) {
  const auto [x, y] = grid_coordinates(coarse, PointSet::cell, PointSet::cell);
  const Matrix w = cell_weights(coarse);
  Matrix pts(x.size() * y.size(), 2);
  for (Eigen::Index j = 0, k = 0; j < y.size(); ++j)
    for (Eigen::Index i = 0; i < x.size(); ++i, ++k) pts.row(k) << x(i), y(j);
  const Matrix ra = eval_field(coarse, a.rho, pts), rb = eval_field(fine, b.rho, pts);
  const Matrix ua = eval_field(coarse, a.u, pts), ub = eval_field(fine, b.u, pts);
  const Eigen::Map<const Vector> wv(w.data(), w.size());
  const double er = std::sqrt(wv.dot((ra - rb).col(0).cwiseAbs2()));
  const double eu = std::sqrt(wv.dot((ua - ub).rowwise().squaredNorm()));
  return {er, eu};
}

std::vector<ConvergenceReport> convergence_study(const ScenarioSpec& spec, const std::vector<int>& degrees,
                                                 const std::vector<int>& grids, double dt, double t_final,
                                                 const SolverParams& params,
                                                 const std::function<void(const std::string&)>& log) {
  if (grids.empty() || degrees.empty()) throw std::invalid_argument("convergence_study: empty grid or degree list");
  const int n_steps = static_cast<int>(std::lround(t_final / dt));
  std::vector<ConvergenceReport> reports;
  for (int p : degrees) {
    ConvergenceReport rep;
    rep.scenario = spec.name;
    rep.degree = p;
    int finest = 0;
    for (int n : grids) finest = std::max(finest, n);
    rep.reference_n = 2 * finest;

    auto simulate = [&](int n, ConvergenceRow* row) {
      const auto t0 = std::chrono::steady_clock::now();
      DeRham2D c = build_complex(spec, n, n, p);
      const MHDState s0 = initial_state(c, spec);
      RunResult r = run(c, spec.eos, spec.gravity, s0, dt, n_steps, params);
      if (row != nullptr) {
        const auto& first = r.rows.front();
        for (const auto& x : r.rows) {
          row->mass_drift = std::max(row->mass_drift, std::abs(x.total_mass - first.total_mass));
          row->relative_energy_drift = std::max(row->relative_energy_drift,
                                                std::abs(x.total_energy - first.total_energy) / std::abs(first.total_energy));
        }
        row->seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      }
      return std::make_pair(std::move(c), std::move(r.final_state));
    };

    if (log) log("degree " + std::to_string(p) + ": reference run on " + std::to_string(rep.reference_n) + " cells");
    const auto [ref_complex, ref_state] = simulate(rep.reference_n, nullptr);
    for (int n : grids) {
      ConvergenceRow row;
      row.n = n;
      row.h = spec.lengths[0] / n;
      const auto [c, st] = simulate(n, &row);
      std::tie(row.err_rho, row.err_u) = state_distance(c, st, ref_complex, ref_state);
      if (!rep.rows.empty()) {
        const auto& prev = rep.rows.back();
        row.order_rho = observed_order(prev.err_rho, row.err_rho, prev.h, row.h);
        row.order_u = observed_order(prev.err_u, row.err_u, prev.h, row.h);
      }
      if (log) {
        std::ostringstream os;
        os << "degree " << p << " n " << n << ": err_rho " << row.err_rho << " err_u " << row.err_u << " ("
           << row.seconds << " s)";
        log(os.str());
      }
      rep.rows.push_back(row);
    }
    reports.push_back(std::move(rep));
  }
  return reports;
}

}  // namespace feec_mhd
