#include "feec_mhd/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace feec_mhd {

GaussRule gauss_legendre(int n_points) {
  if (n_points < 1) throw std::invalid_argument("gauss_legendre: need at least one point");
  GaussRule rule;
  rule.nodes.resize(n_points);
  rule.weights.resize(n_points);
  const int n = n_points;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton on P_n starting from the Chebyshev-like guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

IntervalQuadrature interval_quadrature(const std::vector<double>& ends, double h, int points_per_piece,
                                       double period) {
  if (ends.size() < 2) throw std::invalid_argument("interval_quadrature: need at least one interval");
  const GaussRule rule = gauss_legendre(points_per_piece);
  IntervalQuadrature q;
  q.n_intervals = static_cast<int>(ends.size()) - 1;
  const double eps = 1e-12 * h;
  for (int i = 0; i < q.n_intervals; ++i) {
    const double a = ends[i];
    const double b = ends[i + 1];
    std::vector<double> cuts{a};
    for (long k = static_cast<long>(std::floor(a / h)) + 1; k * h < b - eps; ++k) {
      if (k * h > a + eps) cuts.push_back(k * h);
    }
    cuts.push_back(b);
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const double mid = 0.5 * (cuts[c] + cuts[c + 1]);
      const double half = 0.5 * (cuts[c + 1] - cuts[c]);
      for (int k = 0; k < points_per_piece; ++k) {
        double x = mid + half * rule.nodes[k];
        if (period > 0.0) {
          x = std::fmod(x, period);
          if (x < 0.0) x += period;
        }
        q.points.push_back(x);
        q.weights.push_back(half * rule.weights[k]);
        q.interval.push_back(i);
      }
    }
  }
  return q;
}

}  // namespace feec_mhd
