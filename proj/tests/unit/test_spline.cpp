#include <doctest.h>

#include <cmath>
#include <numbers>

#include "feec_mhd/quadrature.hpp"
#include "feec_mhd/spline.hpp"

using namespace feec_mhd;

namespace {

// Plain Cox-de Boor recursion on an explicit knot vector, used as an
// independent reference for the basis evaluation.
double cox_de_boor(const std::vector<double>& t, int i, int p, double x) {
  if (p == 0) return (t[i] <= x && x < t[i + 1]) ? 1.0 : 0.0;
  double v = 0.0;
  if (t[i + p] > t[i]) v += (x - t[i]) / (t[i + p] - t[i]) * cox_de_boor(t, i, p - 1, x);
  if (t[i + p + 1] > t[i + 1]) v += (t[i + p + 1] - x) / (t[i + p + 1] - t[i + 1]) * cox_de_boor(t, i + 1, p - 1, x);
  return v;
}

// Value of global function `i` of a space at x by brute force: periodic
// functions are uniform B-splines starting at (i - shift) * h, summed over
// periodic images.
double reference_basis(const Spline1DSpace& s, int i, double x) {
  const int p = s.degree();
  const double h = s.cell_size();
  if (s.periodic()) {
    const int shift = (p + 1) / 2;
    std::vector<double> t(p + 2);
    double v = 0.0;
    for (int image = -2; image <= 2; ++image) {
      const double start = (i - shift) * h + image * s.length();
      for (int k = 0; k <= p + 1; ++k) t[k] = start + k * h;
      v += cox_de_boor(t, 0, p, x);
    }
    return v;
  }
  std::vector<double> t;
  for (int k = 0; k <= p; ++k) t.push_back(0.0);
  for (int k = 1; k < s.n_cells(); ++k) t.push_back(k * h);
  for (int k = 0; k <= p; ++k) t.push_back(s.length());
  if (x >= s.length()) x = s.length() * (1 - 1e-15);
  return cox_de_boor(t, i, p, x);
}

double eval_full(const Spline1DSpace& s, int i, double x) {
  const BasisValues b = eval_basis(s, x);
  for (int k = 0; k <= s.degree(); ++k) {
    const int g = s.periodic() ? (b.first + k) % s.dim() : b.first + k;
    if (g == i) return b.values(k);
  }
  return 0.0;
}

}  // namespace

TEST_CASE("gauss rules integrate polynomials exactly") {
  for (int n = 1; n <= 8; ++n) {
    const GaussRule g = gauss_legendre(n);
    for (int d = 0; d <= 2 * n - 1; ++d) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += g.weights[k] * std::pow(g.nodes[k], d);
      const double exact = d % 2 == 1 ? 0.0 : 2.0 / (d + 1);
      CHECK(s == doctest::Approx(exact).epsilon(1e-14));
    }
  }
}

TEST_CASE("basis matches the Cox-de Boor recursion") {
  for (Boundary bc : {Boundary::periodic, Boundary::clamped}) {
    for (int p = 0; p <= 4; ++p) {
      const Spline1DSpace s(7, p, bc, 1.3);
      double sum_err = 0.0, err = 0.0;
      for (int q = 0; q < 97; ++q) {
        const double x = 1.3 * (q + 0.37) / 97.0;
        double total = 0.0;
        for (int i = 0; i < s.dim(); ++i) {
          const double v = eval_full(s, i, x);
          total += v;
          err = std::max(err, std::abs(v - reference_basis(s, i, x)));
        }
        sum_err = std::max(sum_err, std::abs(total - 1.0));
      }
      CHECK(err < 1e-13);
      CHECK(sum_err < 1e-13);
    }
  }
}

TEST_CASE("greville points of small periodic spaces") {
  const auto g1 = greville_points(Spline1DSpace(4, 1, Boundary::periodic, 1.0));
  const auto g2 = greville_points(Spline1DSpace(4, 2, Boundary::periodic, 1.0));
  const double e1[] = {0.0, 0.25, 0.5, 0.75};
  const double e2[] = {0.125, 0.375, 0.625, 0.875};
  for (int i = 0; i < 4; ++i) {
    CHECK(g1[i] == doctest::Approx(e1[i]));
    CHECK(g2[i] == doctest::Approx(e2[i]));
  }
}

TEST_CASE("derivative map agrees with differentiating the spline") {
  for (Boundary bc : {Boundary::periodic, Boundary::clamped}) {
    for (int p = 1; p <= 4; ++p) {
      const Spline1DSpace high(9, p, bc, 2.0);
      const Spline1DSpace low = derivative_space(high);
      Vector c(high.dim());
      for (int i = 0; i < c.size(); ++i) c(i) = std::sin(1.7 * i + 0.3) + 0.1 * i;
      const Vector d = derivative_map(high) * c;
      double err = 0.0;
      for (int q = 0; q < 53; ++q) {
        const double x = 2.0 * (q + 0.21) / 53.0;
        const double h = 1e-6;
        const double fd = (eval_spline(high, c, x + h) - eval_spline(high, c, x - h)) / (2 * h);
        err = std::max(err, std::abs(eval_spline(low, d, x) - fd));
        CHECK(eval_spline(high, c, x, 1) == doctest::Approx(eval_spline(low, d, x)).epsilon(1e-11));
      }
      CHECK(err < 1e-6);
    }
  }
}

TEST_CASE("projections are idempotent and commute with d/dx") {
  for (Boundary bc : {Boundary::periodic, Boundary::clamped}) {
    for (int p = 1; p <= 4; ++p) {
      const double L = 2.0 * std::numbers::pi;
      const Spline1DSpace high(10, p, bc, L);
      const Spline1DSpace low = derivative_space(high);
      const DofOperator ip = interpolation_operator(high);
      const DofOperator hp = histopolation_operator(low, high);
      auto f = [](double x) { return std::sin(x) + 0.3 * std::cos(2 * x); };
      auto df = [](double x) { return std::cos(x) - 0.6 * std::sin(2 * x); };
      const Vector c = ip.project(f);
      const Vector lhs = hp.project(df);
      const Vector rhs = derivative_map(high) * c;
      CHECK((lhs - rhs).lpNorm<Eigen::Infinity>() < 1e-11);

      // idempotence on splines
      const Vector again = ip.project([&](double x) { return eval_spline(high, c, x); });
      CHECK((again - c).lpNorm<Eigen::Infinity>() < 1e-12);
      const Vector again_low = hp.project([&](double x) { return eval_spline(low, lhs, x); }, p + 2);
      CHECK((again_low - lhs).lpNorm<Eigen::Infinity>() < 1e-11);
    }
  }
}

TEST_CASE("invalid arguments are rejected") {
  CHECK_THROWS_AS(Spline1DSpace(2, 3, Boundary::periodic, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Spline1DSpace(0, 1, Boundary::clamped, 1.0), std::invalid_argument);
  const Spline1DSpace s(4, 2, Boundary::clamped, 1.0);
  CHECK_THROWS_AS(eval_basis(s, 0.5, 3), std::invalid_argument);
  CHECK_THROWS_AS(histopolation_operator(Spline1DSpace(4, 1, Boundary::clamped, 1.0), std::vector<double>{0.0, 1.0}),
                  std::invalid_argument);
}
