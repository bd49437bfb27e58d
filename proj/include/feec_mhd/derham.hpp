#pragma once

#include <array>
#include <functional>
#include <string_view>
#include <vector>

#include "feec_mhd/quadrature.hpp"
#include "feec_mhd/spline.hpp"
#include "feec_mhd/types.hpp"

namespace feec_mhd {

/// Discrete space a coefficient vector lives in. `velocity` stacks two
/// form0 blocks (x component first).
enum class SpaceTag { form0, flux1, dens2, velocity };

std::string_view to_string(SpaceTag tag);

struct FieldCoeffs {
  SpaceTag tag = SpaceTag::form0;
  Vector coeffs;
};

/// Per-direction point sets on which fields are sampled: Greville points of
/// the degree p+1 space, Gauss points of every cell, and exact-order Gauss
/// points of the histopolation sub-intervals.
enum class PointSet { greville, cell, edge };

/// 1D factor of a tensor-product block: S_{p+1} (high) or S_p (low).
enum class Factor { high, low };

/// Points where the degrees of freedom of a factor are read: point values
/// for S_{p+1}, sub-interval integrals (sampled on edge points) for S_p.
constexpr PointSet dof_points(Factor f) { return f == Factor::high ? PointSet::greville : PointSet::edge; }

/// One direction of the tensor-product complex.
class Direction {
 public:
  Direction(int n_cells, int p, Boundary boundary, double length, double origin);

  const Spline1DSpace& space(Factor f) const { return f == Factor::high ? high_ : low_; }
  /// Interpolation for the high factor, histopolation for the low factor.
  const DofOperator& dofs(Factor f) const { return f == Factor::high ? interp_ : histo_; }
  /// d/dx as a coefficient map high -> low.
  const SparseMatrix& derivative() const { return deriv_; }
  const SparseMatrix& mass(Factor f) const { return f == Factor::high ? mass_high_ : mass_low_; }

  /// Local coordinates in [0, length].
  const std::vector<double>& points(PointSet s) const;
  const Vector& cell_weights() const { return cell_weights_; }
  /// Sums edge-point samples into sub-interval integrals (intervals x points).
  const SparseMatrix& edge_integration() const { return edge_integration_; }
  /// High-order quadrature of the histopolation sub-intervals, for
  /// projecting general (non-spline) functions.
  const IntervalQuadrature& fine_edge() const { return fine_edge_; }
  /// Basis (or first derivative) tabulated on a point set: points x dim.
  const SparseMatrix& basis(PointSet s, Factor f, int deriv = 0) const;

  int n_cells() const { return high_.n_cells(); }
  int quad_per_cell() const { return quad_per_cell_; }
  double length() const { return high_.length(); }
  double origin() const { return origin_; }
  Boundary boundary() const { return high_.boundary(); }

 private:
  Spline1DSpace high_, low_;
  DofOperator interp_, histo_;
  SparseMatrix deriv_;
  SparseMatrix mass_high_, mass_low_;
  double origin_;
  int quad_per_cell_;
  std::array<std::vector<double>, 3> points_;
  Vector cell_weights_;
  SparseMatrix edge_integration_;
  IntervalQuadrature fine_edge_;
  std::array<std::array<std::array<SparseMatrix, 2>, 2>, 3> basis_;  // [set][factor][deriv]
};

/// 2D tensor-product spline de Rham complex
///   V0 = S_{p+1} x S_{p+1}  --rot-->  V1 = (S_{p+1} x S_p) x (S_p x S_{p+1})  --div-->  V2 = S_p x S_p
/// with commuting interpolation/histopolation projections.
class DeRham2D {
 public:
  struct Block {
    Factor fx, fy;
    int rows, cols;  // coefficient array shape (x index fastest)
    int offset;
  };

  DeRham2D(int nx, int ny, int p, double lx, double ly, Boundary bx, Boundary by, std::array<double, 2> origin);

  int degree() const { return p_; }
  const Direction& dir(int axis) const { return dirs_[axis]; }
  std::array<double, 2> lengths() const { return {dirs_[0].length(), dirs_[1].length()}; }
  std::array<double, 2> origin() const { return {dirs_[0].origin(), dirs_[1].origin()}; }
  std::array<int, 2> cells() const { return {dirs_[0].n_cells(), dirs_[1].n_cells()}; }

  int dim(SpaceTag tag) const;
  const std::vector<Block>& blocks(SpaceTag tag) const { return blocks_[static_cast<int>(tag)]; }

  /// rot : V0 -> V1 and div : V1 -> V2 as sparse coefficient maps.
  const SparseMatrix& d0() const { return d0_; }
  const SparseMatrix& d1() const { return d1_; }
  const SparseMatrix& mass(SpaceTag tag) const { return mass_[static_cast<int>(tag)]; }

  /// Velocity DOFs pinned to zero so that the field stays tangent to clamped
  /// walls: the normal component's boundary rows.
  const std::vector<bool>& velocity_constraints() const { return velocity_constraints_; }

 private:
  int p_;
  std::array<Direction, 2> dirs_;
  std::array<std::vector<Block>, 4> blocks_;
  SparseMatrix d0_, d1_;
  std::array<SparseMatrix, 4> mass_;
  std::vector<bool> velocity_constraints_;
};

DeRham2D build_derham(int nx, int ny, int p, double lx, double ly, Boundary bx, Boundary by,
                      std::array<double, 2> origin = {0.0, 0.0});

using ScalarFunction = std::function<double(double, double)>;

FieldCoeffs zero_field(const DeRham2D& complex, SpaceTag tag);

FieldCoeffs project0(const DeRham2D& complex, const ScalarFunction& f);
FieldCoeffs project1(const DeRham2D& complex, const ScalarFunction& fx, const ScalarFunction& fy);
FieldCoeffs project2(const DeRham2D& complex, const ScalarFunction& f);
/// Componentwise project0 into X_h = V0 x V0.
FieldCoeffs project_velocity(const DeRham2D& complex, const ScalarFunction& fx, const ScalarFunction& fy);

FieldCoeffs apply_d0(const DeRham2D& complex, const FieldCoeffs& c);
FieldCoeffs apply_d1(const DeRham2D& complex, const FieldCoeffs& c);

enum class EvalKind { value, grad };

/// Evaluates a field at physical points (rows of `points`, n x 2). Columns:
/// scalar value (form0, dens2); (x, y) components (flux1, velocity); gradient
/// (d/dx, d/dy) for form0; (dux/dx, dux/dy, duy/dx, duy/dy) for velocity.
Matrix eval_field(const DeRham2D& complex, const FieldCoeffs& c, const Matrix& points, EvalKind kind = EvalKind::value);

SparseMatrix mass_matrix(const DeRham2D& complex, SpaceTag tag);
/// Galerkin matrix of (u, v) -> int rho u.v on the velocity space.
SparseMatrix weighted_velocity_mass(const DeRham2D& complex, const FieldCoeffs& rho);

/// Matrix-free rho-weighted velocity mass with a preconditioned CG solver.
class WeightedVelocityMass {
 public:
  WeightedVelocityMass(const DeRham2D& complex, const FieldCoeffs& rho);

  Vector apply(const Vector& u) const;
  const Vector& diagonal() const { return diagonal_; }
  /// Solves M x = b on the unconstrained DOFs (constrained entries are zero);
  /// relative residual `rel_tol`. Returns the iteration count via `iterations`.
  Vector solve(const Vector& b, double rel_tol, int* iterations = nullptr) const;

 private:
  Vector precondition(const Vector& r) const;

  const DeRham2D* complex_;
  Matrix weight_;  // rho * quadrature weight on the cell grid
  Vector diagonal_;
  Eigen::LLT<Matrix> mx_, my_;
};

double l2_error(const DeRham2D& complex, const FieldCoeffs& c, const ScalarFunction& reference);
double l2_error(const DeRham2D& complex, const FieldCoeffs& c, const ScalarFunction& ref_x, const ScalarFunction& ref_y);

// ---------------------------------------------------------------------------
// Tensor-level kernels shared by the advection, momentum and diagnostics code.

/// Coefficient array of block `b` of a field (rows x cols view).
Eigen::Map<const Matrix> block_view(const FieldCoeffs& c, const DeRham2D::Block& b);
Eigen::Map<Matrix> block_view(FieldCoeffs& c, const DeRham2D::Block& b);

/// Samples component `comp` of a field (with derivative orders dx, dy) on
/// the tensor grid sx x sy.
Matrix sample(const DeRham2D& complex, const FieldCoeffs& c, int comp, PointSet sx, PointSet sy, int dx = 0,
              int dy = 0);

/// Transpose of sampling: Bx^T g By, for basis factors (fx, fy).
Matrix pair_block(const DeRham2D& complex, Factor fx, Factor fy, PointSet sx, PointSet sy, const Matrix& g,
                  int dx = 0, int dy = 0);

/// Quadrature weights on the cell grid.
Matrix cell_weights(const DeRham2D& complex);

/// Physical coordinates of a tensor grid.
std::pair<Vector, Vector> grid_coordinates(const DeRham2D& complex, PointSet sx, PointSet sy);

/// Projection of a block from samples on its DOF grid (dof_points(fx) x dof_points(fy)).
Matrix project_block_from_samples(const DeRham2D& complex, Factor fx, Factor fy, const Matrix& samples);

/// Adjoint of project_block_from_samples: for a functional F on block
/// coefficients returns weights W on the DOF grid with
/// <F, project(samples)> = sum(W .* samples).
Matrix project_block_adjoint(const DeRham2D& complex, Factor fx, Factor fy, const Matrix& functional);

/// C^{-1} R and C^{-T} F for the tensor collocation system of a block.
Matrix solve_block(const DeRham2D& complex, Factor fx, Factor fy, const Matrix& readings);
Matrix solve_block_transpose(const DeRham2D& complex, Factor fx, Factor fy, const Matrix& functional);

}  // namespace feec_mhd
