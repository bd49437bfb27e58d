#include "feec_mhd/krylov.hpp"

#include <cmath>

namespace feec_mhd {

KrylovResult conjugate_gradient(const LinearMap& apply, const Vector& b, const LinearMap& precondition,
                                const Vector& x0, double rel_tol, int max_iterations) {
  KrylovResult out;
  out.x = x0;
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    out.x.setZero();
    out.converged = true;
    return out;
  }
  Vector r = b - apply(out.x);
  Vector z = precondition(r);
  Vector p = z;
  double rz = r.dot(z);
  for (int k = 0; k < max_iterations; ++k) {
    out.relative_residual = r.norm() / bnorm;
    if (out.relative_residual <= rel_tol) {
      out.converged = true;
      return out;
    }
    const Vector ap = apply(p);
    const double alpha = rz / p.dot(ap);
    out.x += alpha * p;
    r -= alpha * ap;
    z = precondition(r);
    const double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
    out.iterations = k + 1;
  }
  out.relative_residual = r.norm() / bnorm;
  out.converged = out.relative_residual <= rel_tol;
  return out;
}

KrylovResult gmres(const LinearMap& apply, const Vector& b, const Vector& x0, double rel_tol, int restart,
                   int max_iterations) {
  KrylovResult out;
  out.x = x0;
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    out.x.setZero();
    out.converged = true;
    return out;
  }
  const int n = static_cast<int>(b.size());
  const int m = std::max(1, std::min(restart, n));
  Matrix v(n, m + 1);
  Matrix h = Matrix::Zero(m + 1, m);
  Vector cs(m), sn(m), g(m + 1);
  while (out.iterations < max_iterations) {
    Vector r = b - apply(out.x);
    double beta = r.norm();
    out.relative_residual = beta / bnorm;
    if (out.relative_residual <= rel_tol) break;
    v.col(0) = r / beta;
    g.setZero();
    g(0) = beta;
    h.setZero();
    int k = 0;
    for (; k < m && out.iterations < max_iterations; ++k) {
      ++out.iterations;
      Vector w = apply(v.col(k));
      for (int j = 0; j <= k; ++j) {
        h(j, k) = w.dot(v.col(j));
        w -= h(j, k) * v.col(j);
      }
      // one reorthogonalization pass keeps the basis clean at tight tolerances
      for (int j = 0; j <= k; ++j) {
        const double c = w.dot(v.col(j));
        h(j, k) += c;
        w -= c * v.col(j);
      }
      h(k + 1, k) = w.norm();
      const bool breakdown = !(h(k + 1, k) > 1e-300);
      if (!breakdown) v.col(k + 1) = w / h(k + 1, k);
      for (int j = 0; j < k; ++j) {
        const double t = cs(j) * h(j, k) + sn(j) * h(j + 1, k);
        h(j + 1, k) = -sn(j) * h(j, k) + cs(j) * h(j + 1, k);
        h(j, k) = t;
      }
      const double denom = std::hypot(h(k, k), h(k + 1, k));
      cs(k) = h(k, k) / denom;
      sn(k) = h(k + 1, k) / denom;
      h(k, k) = denom;
      h(k + 1, k) = 0.0;
      g(k + 1) = -sn(k) * g(k);
      g(k) = cs(k) * g(k);
      out.relative_residual = std::abs(g(k + 1)) / bnorm;
      if (out.relative_residual <= rel_tol || breakdown) {
        ++k;
        break;
      }
    }
    const Vector y = h.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(g.head(k));
    out.x += v.leftCols(k) * y;
  }
  out.relative_residual = (b - apply(out.x)).norm() / bnorm;
  out.converged = out.relative_residual <= rel_tol;
  return out;
}

}  // namespace feec_mhd
