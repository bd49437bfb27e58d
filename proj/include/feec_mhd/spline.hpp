#pragma once

#include <functional>
#include <vector>

#include "feec_mhd/types.hpp"

namespace feec_mhd {

/// Univariate spline space of maximal smoothness on a uniform grid of
/// [0, length]. Periodic spaces have n_cells functions, clamped spaces use an
/// open knot vector and have n_cells + degree functions.
class Spline1DSpace {
 public:
  Spline1DSpace(int n_cells, int degree, Boundary boundary, double length);

  int n_cells() const { return n_cells_; }
  int degree() const { return degree_; }
  Boundary boundary() const { return boundary_; }
  bool periodic() const { return boundary_ == Boundary::periodic; }
  double length() const { return length_; }
  double cell_size() const { return length_ / n_cells_; }
  int dim() const { return dim_; }

  std::vector<double> breakpoints() const;
  /// Extended knot vector: knots()[degree] = 0 and knots()[n_cells + degree] = length.
  /// Periodic spaces continue the uniform spacing beyond both ends.
  const std::vector<double>& knots() const { return knots_; }

  /// Wraps (periodic) or clamps (clamped) x into the domain.
  double reduce(double x) const;
  int cell_of(double reduced_x) const;
  /// Global index of the first of the degree+1 functions active on `cell`.
  int first_active(int cell) const;
  /// Global index of the k-th function active on `cell`.
  int active_index(int cell, int k) const;

  bool same_grid(const Spline1DSpace& other) const;

 private:
  int n_cells_;
  int degree_;
  Boundary boundary_;
  double length_;
  int dim_;
  int shift_;  // periodic index shift, floor((degree + 1) / 2)
  std::vector<double> knots_;
};

Spline1DSpace build_space(int n_cells, int degree, Boundary boundary, double length);

/// Values (or derivatives) of the degree+1 functions active at x. Entry k
/// belongs to global function (first + k) mod dim.
struct BasisValues {
  int first = 0;
  Vector values;
};

BasisValues eval_basis(const Spline1DSpace& space, double x, int deriv_order = 0);

/// All derivatives 0..max_deriv of the active functions at x, as a
/// (degree+1) x (max_deriv+1) array; `first` receives the first active index.
Matrix eval_basis_derivatives(const Spline1DSpace& space, double x, int max_deriv, int& first);

/// Greville abscissae (knot averages). Degree-0 spaces return cell midpoints.
std::vector<double> greville_points(const Spline1DSpace& space);

/// Collocation of all basis functions (derivative `deriv`) at the given points;
/// rows follow `points`, columns are global basis indices.
SparseMatrix collocation_matrix(const Spline1DSpace& space, const std::vector<double>& points, int deriv = 0);

/// Evaluates the spline with coefficients `coeffs` at x.
double eval_spline(const Spline1DSpace& space, const Vector& coeffs, double x, int deriv = 0);

enum class DofKind { interpolation, histopolation };

/// Factorized collocation system mapping degree-of-freedom readings of a
/// function to spline coefficients: point values at Greville points
/// (interpolation) or integrals over consecutive companion Greville
/// sub-intervals (histopolation).
class DofOperator {
 public:
  DofOperator(DofKind kind, Spline1DSpace space, std::vector<double> nodes, Matrix collocation);

  DofKind kind() const { return kind_; }
  const Spline1DSpace& space() const { return space_; }
  /// Interpolation: Greville points. Histopolation: dim+1 sub-interval ends,
  /// unwrapped (the last may exceed length for periodic spaces).
  const std::vector<double>& nodes() const { return nodes_; }
  const Matrix& collocation() const { return collocation_; }

  /// Coefficients from readings; applies column-wise to matrices.
  Matrix apply(const Matrix& readings) const;
  /// Transpose of apply: C^{-T} f.
  Matrix apply_transpose(const Matrix& functional) const;

  /// Degree-of-freedom readings of f; histopolation integrals use
  /// `points_per_piece` Gauss points between breakpoints.
  Vector readings(const std::function<double(double)>& f, int points_per_piece = 10) const;

  /// Induced projection: apply(readings(f)).
  Vector project(const std::function<double(double)>& f, int points_per_piece = 10) const;

 private:
  DofKind kind_;
  Spline1DSpace space_;
  std::vector<double> nodes_;
  Matrix collocation_;
  Eigen::PartialPivLU<Matrix> lu_;
};

/// Interpolation at Greville points. Requires degree >= 1.
DofOperator interpolation_operator(const Spline1DSpace& space);

/// Histopolation of `low` over the sub-intervals between consecutive
/// Greville points of its degree+1 companion space.
DofOperator histopolation_operator(const Spline1DSpace& low, const std::vector<double>& companion_greville);
DofOperator histopolation_operator(const Spline1DSpace& low, const Spline1DSpace& companion);

/// The degree-1 space on the same grid.
Spline1DSpace derivative_space(const Spline1DSpace& high);

/// Coefficient map D with d/dx (sum c_i N_i) = sum (D c)_k M_k, where M_k spans
/// derivative_space(high). Shape: low.dim x high.dim.
SparseMatrix derivative_map(const Spline1DSpace& high);

}  // namespace feec_mhd
