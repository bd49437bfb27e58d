#pragma once

// Direct, per-test-function evaluation of the momentum residual: every
// projection is carried out on pointwise closures. Slow by design.

#include <cmath>
#include <numbers>
#include <random>

#include "feec_mhd/model.hpp"

namespace feec_mhd::oracle {

inline double at(const DeRham2D& c, const FieldCoeffs& f, int col, double x, double y) {
  Matrix p(1, 2);
  p << x, y;
  return eval_field(c, f, p)(0, col);
}

inline double grad_at(const DeRham2D& c, const FieldCoeffs& f, int col, double x, double y) {
  Matrix p(1, 2);
  p << x, y;
  return eval_field(c, f, p, EvalKind::grad)(0, col);
}

inline FieldCoeffs slow_transport_density(const DeRham2D& c, const FieldCoeffs& v, const FieldCoeffs& w) {
  return apply_d1(c, project1(
                         c, [&](double x, double y) { return at(c, w, 0, x, y) * at(c, v, 0, x, y); },
                         [&](double x, double y) { return at(c, w, 0, x, y) * at(c, v, 1, x, y); }));
}

inline FieldCoeffs slow_transport_flux(const DeRham2D& c, const FieldCoeffs& v, const FieldCoeffs& b) {
  FieldCoeffs out = apply_d0(c, project0(c, [&](double x, double y) {
                               return at(c, b, 0, x, y) * at(c, v, 1, x, y) - at(c, b, 1, x, y) * at(c, v, 0, x, y);
                             }));
  const FieldCoeffs div = apply_d1(c, b);
  out.coeffs += project1(
                    c, [&](double x, double y) { return at(c, div, 0, x, y) * at(c, v, 0, x, y); },
                    [&](double x, double y) { return at(c, div, 0, x, y) * at(c, v, 1, x, y); })
                    .coeffs;
  return out;
}

// Integral over the domain with the per-cell Gauss rule of the complex.
template <class F>
inline double integrate(const DeRham2D& c, F&& f) {
  const int q = c.degree() + 2;
  const GaussRule g = gauss_legendre(q);
  const auto n = c.cells();
  const double hx = c.lengths()[0] / n[0], hy = c.lengths()[1] / n[1];
  double s = 0.0;
  for (int i = 0; i < n[0]; ++i)
    for (int j = 0; j < n[1]; ++j)
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
          const double x = c.origin()[0] + (i + 0.5 + 0.5 * g.nodes[a]) * hx;
          const double y = c.origin()[1] + (j + 0.5 + 0.5 * g.nodes[b]) * hy;
          s += 0.25 * hx * hy * g.weights[a] * g.weights[b] * f(x, y);
        }
  return s;
}

// The weak momentum equation tested against one velocity basis function,
// with every projection carried out explicitly.
inline double slow_residual_entry(const DeRham2D& c, const EquationOfState& eos, const GravitySpec& grav, const MHDState& k0,
                           const MHDState& k1, double dt, int j) {
  FieldCoeffs v = zero_field(c, SpaceTag::velocity);
  v.coeffs(j) = 1.0;
  const FieldCoeffs um{SpaceTag::velocity, 0.5 * (k0.u.coeffs + k1.u.coeffs)};
  const FieldCoeffs rm{SpaceTag::dens2, 0.5 * (k0.rho.coeffs + k1.rho.coeffs)};
  const FieldCoeffs sm{SpaceTag::dens2, 0.5 * (k0.s.coeffs + k1.s.coeffs)};
  const FieldCoeffs bm{SpaceTag::flux1, 0.5 * (k0.B.coeffs + k1.B.coeffs)};

  double r = integrate(c, [&](double x, double y) {
    double acc = 0.0;
    for (int i = 0; i < 2; ++i)
      acc += (at(c, k1.rho, 0, x, y) * at(c, k1.u, i, x, y) - at(c, k0.rho, 0, x, y) * at(c, k0.u, i, x, y)) *
             at(c, v, i, x, y);
    return acc / dt;
  });

  FieldCoeffs bracket = zero_field(c, SpaceTag::velocity);
  for (int i = 0; i < 2; ++i) {
    const FieldCoeffs comp = project0(c, [&](double x, double y) {
      return at(c, v, 0, x, y) * grad_at(c, um, 2 * i, x, y) + at(c, v, 1, x, y) * grad_at(c, um, 2 * i + 1, x, y) -
             at(c, um, 0, x, y) * grad_at(c, v, 2 * i, x, y) - at(c, um, 1, x, y) * grad_at(c, v, 2 * i + 1, x, y);
    });
    bracket.coeffs.segment(i * comp.coeffs.size(), comp.coeffs.size()) = comp.coeffs;
  }
  r += integrate(c, [&](double x, double y) {
    return at(c, rm, 0, x, y) * (at(c, um, 0, x, y) * at(c, bracket, 0, x, y) + at(c, um, 1, x, y) * at(c, bracket, 1, x, y));
  });

  const FieldCoeffs arho = slow_transport_density(c, v, rm);
  const FieldCoeffs as = slow_transport_density(c, v, sm);
  r += integrate(c, [&](double x, double y) {
    const double r0 = at(c, k0.rho, 0, x, y), r1 = at(c, k1.rho, 0, x, y);
    const double s0 = at(c, k0.s, 0, x, y), s1 = at(c, k1.s, 0, x, y);
    const DiscreteGradient dg = discrete_gradient_coeffs(eos, r0, r1, s0, s1);
    const double kin = 0.5 * (at(c, k0.u, 0, x, y) * at(c, k1.u, 0, x, y) + at(c, k0.u, 1, x, y) * at(c, k1.u, 1, x, y));
    const double phi = grav.active() ? (*grav.potential)(x, y) : 0.0;
    return (kin - dg.c_rho - phi) * at(c, arho, 0, x, y) - dg.c_s * at(c, as, 0, x, y);
  });

  const FieldCoeffs ab = slow_transport_flux(c, v, bm);
  r -= integrate(c, [&](double x, double y) {
    return at(c, bm, 0, x, y) * at(c, ab, 0, x, y) + at(c, bm, 1, x, y) * at(c, ab, 1, x, y);
  });
  return r;
}

inline MHDState smooth_state(const DeRham2D& c, double phase) {
  MHDState st;
  st.u = project_velocity(
      c, [&](double x, double y) { return 0.5 + 0.3 * std::sin(2 * std::numbers::pi * x + phase) * std::cos(2 * std::numbers::pi * y); },
      [&](double x, double y) { return -0.2 + 0.4 * std::cos(2 * std::numbers::pi * x) * std::sin(2 * std::numbers::pi * y + phase); });
  st.rho = project2(c, [&](double x, double y) { return 1.2 + 0.3 * std::sin(2 * std::numbers::pi * (x + y) + phase); });
  st.s = project2(c, [&](double x, double y) { return 0.1 + 0.2 * std::cos(2 * std::numbers::pi * x - phase) * std::sin(2 * std::numbers::pi * y); });
  // a non-solenoidal field exercises the i_u dB term as well
  st.B = project1(
      c, [&](double x, double y) { return 0.8 + 0.2 * std::sin(2 * std::numbers::pi * y + phase) + 0.1 * std::cos(2 * std::numbers::pi * x); },
      [&](double x, double y) { return 0.3 * std::cos(2 * std::numbers::pi * x + phase) * std::cos(2 * std::numbers::pi * y); });
  return st;
}

/// Positive density and moderate entropy with random coefficients.
inline MHDState random_state(const DeRham2D& c, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto fill = [&](SpaceTag tag, double base, double amp) {
    FieldCoeffs f{tag, Vector(c.dim(tag))};
    for (auto& x : f.coeffs) x = base + amp * u(gen);
    return f;
  };
  MHDState st;
  st.u = fill(SpaceTag::velocity, 0.0, 0.5);
  st.rho = fill(SpaceTag::dens2, 1.0, 0.3);
  st.s = fill(SpaceTag::dens2, 0.1, 0.2);
  st.B = fill(SpaceTag::flux1, 0.0, 0.5);
  return st;
}

}  // namespace feec_mhd::oracle
