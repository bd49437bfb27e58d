#include "feec_mhd/model.hpp"

namespace feec_mhd {

namespace {

constexpr PointSet C = PointSet::cell;
constexpr PointSet G = PointSet::greville;
constexpr PointSet E = PointSet::edge;

FieldCoeffs midpoint(const FieldCoeffs& a, const FieldCoeffs& b) { return {a.tag, 0.5 * (a.coeffs + b.coeffs)}; }

Vector as_vector(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

}  // namespace

Matrix gravity_samples(const DeRham2D& complex, const GravitySpec& gravity) {
  const auto [x, y] = grid_coordinates(complex, C, C);
  Matrix phi = Matrix::Zero(x.size(), y.size());
  if (!gravity.active()) return phi;
  for (Eigen::Index j = 0; j < y.size(); ++j)
    for (Eigen::Index i = 0; i < x.size(); ++i) phi(i, j) = (*gravity.potential)(x(i), y(j));
  return phi;
}

EnergyParts energy_parts(const DeRham2D& complex, const EquationOfState& eos, const GravitySpec& gravity,
                         const MHDState& state) {
  const Matrix w = cell_weights(complex);
  const Matrix rho = sample(complex, state.rho, 0, C, C);
  const Matrix s = sample(complex, state.s, 0, C, C);
  const Matrix ux = sample(complex, state.u, 0, C, C);
  const Matrix uy = sample(complex, state.u, 1, C, C);
  EnergyParts e;
  for (Eigen::Index j = 0; j < w.cols(); ++j)
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      e.kinetic += w(i, j) * 0.5 * rho(i, j) * (ux(i, j) * ux(i, j) + uy(i, j) * uy(i, j));
      e.internal += w(i, j) * rho(i, j) * internal_energy(eos, rho(i, j), s(i, j));
    }
  if (gravity.active()) e.potential = (w.cwiseProduct(rho).cwiseProduct(gravity_samples(complex, gravity))).sum();
  e.magnetic = 0.5 * state.B.coeffs.dot(complex.mass(SpaceTag::flux1) * state.B.coeffs);
  return e;
}

double total_energy(const DeRham2D& complex, const EquationOfState& eos, const GravitySpec& gravity,
                    const MHDState& state) {
  return energy_parts(complex, eos, gravity, state).total();
}

Vector momentum_residual(const DeRham2D& cx, const EquationOfState& eos, const GravitySpec& gravity,
                         const MHDState& k0, const MHDState& k1, double dt, const Matrix* phi) {
  return momentum_residual(cx, eos, gravity, k0, k1, k1.rho.coeffs - k0.rho.coeffs, k1.u.coeffs - k0.u.coeffs, dt,
                           phi);
}

Vector momentum_residual(const DeRham2D& cx, const EquationOfState& eos, const GravitySpec& gravity,
                         const MHDState& k0, const MHDState& k1, const Vector& drho, const Vector& dvel, double dt,
                         const Matrix* phi) {
  if (dt == 0.0) throw std::invalid_argument("momentum_residual: dt must be non-zero");
  const auto& vb = cx.blocks(SpaceTag::velocity);
  const auto& fb = cx.blocks(SpaceTag::flux1);
  const Factor H = Factor::high, L = Factor::low;
  const Matrix w = cell_weights(cx);

  const FieldCoeffs um = midpoint(k0.u, k1.u);
  const FieldCoeffs rm = midpoint(k0.rho, k1.rho);
  const FieldCoeffs sm = midpoint(k0.s, k1.s);
  const FieldCoeffs bm = midpoint(k0.B, k1.B);

  // cell-grid samples
  const Matrix r0 = sample(cx, k0.rho, 0, C, C), r1 = sample(cx, k1.rho, 0, C, C);
  const Matrix s0 = sample(cx, k0.s, 0, C, C), s1 = sample(cx, k1.s, 0, C, C);
  Matrix u0[2], u1[2], umc[2];
  for (int i = 0; i < 2; ++i) {
    u0[i] = sample(cx, k0.u, i, C, C);
    u1[i] = sample(cx, k1.u, i, C, C);
    umc[i] = 0.5 * (u0[i] + u1[i]);
  }
  const Matrix rmc = 0.5 * (r0 + r1);

  FieldCoeffs res = zero_field(cx, SpaceTag::velocity);

  // time difference of the momentum
  // sampled from coefficient differences, r1 u1 - r0 u0 = dr u1 + r0 du
  const Matrix dr = sample(cx, FieldCoeffs{k0.rho.tag, drho}, 0, C, C);
  const FieldCoeffs du{k0.u.tag, dvel};
  for (int c = 0; c < 2; ++c) {
    const Matrix duc = sample(cx, du, c, C, C);
    const Matrix g = w.cwiseProduct(dr.cwiseProduct(u1[c]) + r0.cwiseProduct(duc)) / dt;
    block_view(res, vb[c]) = pair_block(cx, H, H, C, C, g);
  }

  // bracket term: +int rho_m sum_i u_m,i P0(v . grad u_m,i - u_m . grad v_i)
  {
    Matrix lambda[2], grad[2][2];
    for (int i = 0; i < 2; ++i) {
      lambda[i] = solve_block_transpose(cx, H, H, pair_block(cx, H, H, C, C, w.cwiseProduct(rmc).cwiseProduct(umc[i])));
      grad[i][0] = sample(cx, um, i, G, G, 1, 0);
      grad[i][1] = sample(cx, um, i, G, G, 0, 1);
    }
    const Matrix ugx = sample(cx, um, 0, G, G), ugy = sample(cx, um, 1, G, G);
    for (int c = 0; c < 2; ++c) {
      const Matrix g = -(lambda[0].cwiseProduct(grad[0][c]) + lambda[1].cwiseProduct(grad[1][c]));
      block_view(res, vb[c]) -= pair_block(cx, H, H, G, G, g) +
                                pair_block(cx, H, H, G, G, lambda[c].cwiseProduct(ugx), 1, 0) +
                                pair_block(cx, H, H, G, G, lambda[c].cwiseProduct(ugy), 0, 1);
    }
  }

  // thermodynamic and kinetic coefficients paired with D1 P1(f v)
  Matrix kcoef(w.rows(), w.cols()), scoef(w.rows(), w.cols());
  const Matrix phi_local = (phi == nullptr && gravity.active()) ? gravity_samples(cx, gravity) : Matrix();
  const Matrix* ph = phi != nullptr ? phi : (gravity.active() ? &phi_local : nullptr);
  for (Eigen::Index j = 0; j < w.cols(); ++j)
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      const DiscreteGradient dg = discrete_gradient_coeffs(eos, r0(i, j), r1(i, j), s0(i, j), s1(i, j));
      const double kin = 0.5 * (u0[0](i, j) * u1[0](i, j) + u0[1](i, j) * u1[1](i, j));
      kcoef(i, j) = kin - dg.c_rho - (ph ? (*ph)(i, j) : 0.0);
      scoef(i, j) = dg.c_s;
    }
  const Vector mu_rho = cx.d1().transpose() * as_vector(pair_block(cx, L, L, C, C, w.cwiseProduct(kcoef)));
  const Vector mu_s = cx.d1().transpose() * as_vector(pair_block(cx, L, L, C, C, w.cwiseProduct(scoef)));
  const Vector m1b = cx.mass(SpaceTag::flux1) * bm.coeffs;
  const FieldCoeffs divb = apply_d1(cx, bm);
  const bool has_div = divb.coeffs.lpNorm<Eigen::Infinity>() > 0.0;

  const PointSet grid_x[2] = {G, E}, grid_y[2] = {E, G};
  for (int c = 0; c < 2; ++c) {
    const auto& b = fb[c];
    const PointSet sx = grid_x[c], sy = grid_y[c];
    auto adjoint = [&](const Vector& f) {
      return project_block_adjoint(cx, b.fx, b.fy, Eigen::Map<const Matrix>(f.data() + b.offset, b.rows, b.cols));
    };
    Matrix omega = adjoint(mu_rho).cwiseProduct(sample(cx, rm, 0, sx, sy));
    if (eos.kind != EosKind::barotropic) omega -= adjoint(mu_s).cwiseProduct(sample(cx, sm, 0, sx, sy));
    if (has_div) omega -= adjoint(m1b).cwiseProduct(sample(cx, divb, 0, sx, sy));
    block_view(res, vb[c]) += pair_block(cx, H, H, sx, sy, omega);
  }

  // magnetic term: -int B_m . D0 P0(B_mx v_y - B_my v_x)
  {
    const Vector d0m = cx.d0().transpose() * m1b;
    const Matrix nu = solve_block_transpose(cx, H, H, Eigen::Map<const Matrix>(d0m.data(), vb[0].rows, vb[0].cols));
    const Matrix bx = sample(cx, bm, 0, G, G), by = sample(cx, bm, 1, G, G);
    block_view(res, vb[0]) += pair_block(cx, H, H, G, G, nu.cwiseProduct(by));
    block_view(res, vb[1]) -= pair_block(cx, H, H, G, G, nu.cwiseProduct(bx));
  }
  return res.coeffs;
}

}  // namespace feec_mhd
