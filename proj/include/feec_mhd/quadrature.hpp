#pragma once

#include <vector>

namespace feec_mhd {

/// Gauss-Legendre rule on the reference interval [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_legendre(int n_points);

/// Quadrature points and weights on a list of adjacent intervals, each split
/// at the uniform breakpoints k*h it contains. `ends` has one more entry than
/// there are intervals and may extend past `period` (periodic wrap); returned
/// points are reduced modulo `period` when it is positive.
struct IntervalQuadrature {
  std::vector<double> points;
  std::vector<double> weights;
  std::vector<int> interval;  // owning interval of each point
  int n_intervals = 0;
};

IntervalQuadrature interval_quadrature(const std::vector<double>& ends, double h, int points_per_piece,
                                       double period);

}  // namespace feec_mhd
