#pragma once

#include <functional>
#include <vector>

#include "feec_mhd/types.hpp"

namespace feec_mhd {

using LinearMap = std::function<Vector(const Vector&)>;

struct KrylovResult {
  Vector x;
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

/// Preconditioned conjugate gradients for SPD systems. Stops when
/// |r| <= rel_tol * |b|.
KrylovResult conjugate_gradient(const LinearMap& apply, const Vector& b, const LinearMap& precondition,
                                const Vector& x0, double rel_tol, int max_iterations);

/// Restarted GMRES(restart), unpreconditioned, Arnoldi by modified
/// Gram-Schmidt and Givens rotations.
KrylovResult gmres(const LinearMap& apply, const Vector& b, const Vector& x0, double rel_tol, int restart,
                   int max_iterations);

}  // namespace feec_mhd
