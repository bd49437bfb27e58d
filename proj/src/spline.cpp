#include "feec_mhd/spline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "feec_mhd/quadrature.hpp"

namespace feec_mhd {

namespace {

int positive_mod(int a, int n) {
  const int r = a % n;
  return r < 0 ? r + n : r;
}

// Derivatives 0..n of the p+1 B-splines active on knot span `span`
// (Piegl & Tiller, algorithm A2.3). Result is (p+1) x (n+1).
Matrix ders_basis_funs(int span, double u, int p, int n, const std::vector<double>& knots) {
  Matrix ndu(p + 1, p + 1);
  Vector left(p + 1), right(p + 1);
  ndu(0, 0) = 1.0;
  for (int j = 1; j <= p; ++j) {
    left(j) = u - knots[span + 1 - j];
    right(j) = knots[span + j] - u;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      ndu(j, r) = right(r + 1) + left(j - r);
      const double temp = ndu(r, j - 1) / ndu(j, r);
      ndu(r, j) = saved + right(r + 1) * temp;
      saved = left(j - r) * temp;
    }
    ndu(j, j) = saved;
  }
  Matrix ders = Matrix::Zero(p + 1, n + 1);
  for (int j = 0; j <= p; ++j) ders(j, 0) = ndu(j, p);
  if (n == 0) return ders;

  Matrix a(2, p + 1);
  for (int r = 0; r <= p; ++r) {
    int s1 = 0, s2 = 1;
    a(0, 0) = 1.0;
    for (int k = 1; k <= n; ++k) {
      double d = 0.0;
      const int rk = r - k;
      const int pk = p - k;
      if (r >= k) {
        a(s2, 0) = a(s1, 0) / ndu(pk + 1, rk);
        d = a(s2, 0) * ndu(rk, pk);
      }
      const int j1 = rk >= -1 ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a(s2, j) = (a(s1, j) - a(s1, j - 1)) / ndu(pk + 1, rk + j);
        d += a(s2, j) * ndu(rk + j, pk);
      }
      if (r <= pk) {
        a(s2, k) = -a(s1, k - 1) / ndu(pk + 1, r);
        d += a(s2, k) * ndu(r, pk);
      }
      ders(r, k) = d;
      std::swap(s1, s2);
    }
  }
  double factor = p;
  for (int k = 1; k <= n; ++k) {
    ders.col(k) *= factor;
    factor *= (p - k);
  }
  return ders;
}

}  // namespace

Spline1DSpace::Spline1DSpace(int n_cells, int degree, Boundary boundary, double length)
    : n_cells_(n_cells), degree_(degree), boundary_(boundary), length_(length) {
  if (n_cells < 1) throw std::invalid_argument("spline space: n_cells must be >= 1");
  if (degree < 0) throw std::invalid_argument("spline space: degree must be >= 0");
  if (!(length > 0.0)) throw std::invalid_argument("spline space: length must be positive");
  if (boundary == Boundary::periodic && n_cells <= degree) {
    throw std::invalid_argument("spline space: periodic space needs n_cells > degree (got n_cells=" +
                                std::to_string(n_cells) + ", degree=" + std::to_string(degree) + ")");
  }
  dim_ = periodic() ? n_cells : n_cells + degree;
  shift_ = (degree + 1) / 2;
  const double h = cell_size();
  const int n_knots = n_cells + 2 * degree + 1;
  knots_.resize(n_knots);
  for (int k = 0; k < n_knots; ++k) {
    const int i = k - degree;
    if (periodic()) {
      knots_[k] = i * h;
    } else {
      knots_[k] = i <= 0 ? 0.0 : (i >= n_cells ? length : i * h);
    }
  }
}

std::vector<double> Spline1DSpace::breakpoints() const {
  std::vector<double> b(n_cells_ + 1);
  for (int i = 0; i <= n_cells_; ++i) b[i] = i * length_ / n_cells_;
  return b;
}

double Spline1DSpace::reduce(double x) const {
  if (periodic()) {
    double r = std::fmod(x, length_);
    if (r < 0.0) r += length_;
    if (r >= length_) r = 0.0;
    return r;
  }
  return std::clamp(x, 0.0, length_);
}

int Spline1DSpace::cell_of(double reduced_x) const {
  const int c = static_cast<int>(std::floor(reduced_x / cell_size()));
  return std::clamp(c, 0, n_cells_ - 1);
}

int Spline1DSpace::first_active(int cell) const {
  return periodic() ? positive_mod(cell - degree_ + shift_, dim_) : cell;
}

int Spline1DSpace::active_index(int cell, int k) const {
  const int i = first_active(cell) + k;
  return periodic() ? i % dim_ : i;
}

bool Spline1DSpace::same_grid(const Spline1DSpace& other) const {
  return n_cells_ == other.n_cells_ && boundary_ == other.boundary_ && length_ == other.length_;
}

Spline1DSpace build_space(int n_cells, int degree, Boundary boundary, double length) {
  return Spline1DSpace(n_cells, degree, boundary, length);
}

Matrix eval_basis_derivatives(const Spline1DSpace& space, double x, int max_deriv, int& first) {
  if (max_deriv < 0 || max_deriv > space.degree()) {
    throw std::invalid_argument("eval_basis: derivative order exceeds degree");
  }
  const double u = space.reduce(x);
  const int cell = space.cell_of(u);
  first = space.first_active(cell);
  return ders_basis_funs(cell + space.degree(), u, space.degree(), max_deriv, space.knots());
}

BasisValues eval_basis(const Spline1DSpace& space, double x, int deriv_order) {
  BasisValues out;
  const Matrix d = eval_basis_derivatives(space, x, deriv_order, out.first);
  out.values = d.col(deriv_order);
  return out;
}

std::vector<double> greville_points(const Spline1DSpace& space) {
  const int p = space.degree();
  const double h = space.cell_size();
  std::vector<double> g(space.dim());
  for (int i = 0; i < space.dim(); ++i) {
    if (p == 0) {
      g[i] = (i + 0.5) * h;
    } else if (space.periodic()) {
      // function i starts at knot (i - shift) * h
      g[i] = (i - (p + 1) / 2 + 0.5 * (p + 1)) * h;
    } else {
      double s = 0.0;
      for (int k = 1; k <= p; ++k) s += space.knots()[i + k];
      g[i] = s / p;
    }
  }
  return g;
}

SparseMatrix collocation_matrix(const Spline1DSpace& space, const std::vector<double>& points, int deriv) {
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(points.size() * (space.degree() + 1));
  for (std::size_t r = 0; r < points.size(); ++r) {
    const BasisValues b = eval_basis(space, points[r], deriv);
    for (int k = 0; k <= space.degree(); ++k) {
      const int col = space.periodic() ? (b.first + k) % space.dim() : b.first + k;
      t.emplace_back(static_cast<int>(r), col, b.values(k));
    }
  }
  SparseMatrix m(static_cast<int>(points.size()), space.dim());
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

double eval_spline(const Spline1DSpace& space, const Vector& coeffs, double x, int deriv) {
  const BasisValues b = eval_basis(space, x, deriv);
  double v = 0.0;
  for (int k = 0; k <= space.degree(); ++k) {
    v += coeffs(space.periodic() ? (b.first + k) % space.dim() : b.first + k) * b.values(k);
  }
  return v;
}

DofOperator::DofOperator(DofKind kind, Spline1DSpace space, std::vector<double> nodes, Matrix collocation)
    : kind_(kind), space_(std::move(space)), nodes_(std::move(nodes)), collocation_(std::move(collocation)) {
  lu_.compute(collocation_);
  const double rcond = lu_.rcond();
  if (!(rcond > 1e-14)) throw std::runtime_error("DofOperator: singular collocation system");
}

Matrix DofOperator::apply(const Matrix& readings) const { return lu_.solve(readings); }

Matrix DofOperator::apply_transpose(const Matrix& functional) const { return lu_.transpose().solve(functional); }

Vector DofOperator::readings(const std::function<double(double)>& f, int points_per_piece) const {
  Vector r(space_.dim());
  if (kind_ == DofKind::interpolation) {
    for (int i = 0; i < space_.dim(); ++i) r(i) = f(nodes_[i]);
    return r;
  }
  const IntervalQuadrature q = interval_quadrature(nodes_, space_.cell_size(), points_per_piece,
                                                   space_.periodic() ? space_.length() : 0.0);
  r.setZero();
  for (std::size_t k = 0; k < q.points.size(); ++k) r(q.interval[k]) += q.weights[k] * f(q.points[k]);
  return r;
}

Vector DofOperator::project(const std::function<double(double)>& f, int points_per_piece) const {
  return apply(readings(f, points_per_piece));
}

DofOperator interpolation_operator(const Spline1DSpace& space) {
  if (space.degree() < 1) throw std::invalid_argument("interpolation_operator: degree-0 spaces are histopolated");
  std::vector<double> g = greville_points(space);
  Matrix c = Matrix(collocation_matrix(space, g));
  return DofOperator(DofKind::interpolation, space, std::move(g), std::move(c));
}

DofOperator histopolation_operator(const Spline1DSpace& low, const std::vector<double>& companion_greville) {
  const int expected = low.periodic() ? low.dim() : low.dim() + 1;
  if (static_cast<int>(companion_greville.size()) != expected) {
    throw std::invalid_argument("histopolation_operator: companion Greville count does not match the space");
  }
  std::vector<double> ends = companion_greville;
  if (low.periodic()) ends.push_back(companion_greville.front() + low.length());
  const IntervalQuadrature q = interval_quadrature(ends, low.cell_size(), low.degree() / 2 + 2,
                                                   low.periodic() ? low.length() : 0.0);
  Matrix c = Matrix::Zero(low.dim(), low.dim());
  for (std::size_t k = 0; k < q.points.size(); ++k) {
    const BasisValues b = eval_basis(low, q.points[k]);
    for (int j = 0; j <= low.degree(); ++j) {
      const int col = low.periodic() ? (b.first + j) % low.dim() : b.first + j;
      c(q.interval[k], col) += q.weights[k] * b.values(j);
    }
  }
  return DofOperator(DofKind::histopolation, low, std::move(ends), std::move(c));
}

DofOperator histopolation_operator(const Spline1DSpace& low, const Spline1DSpace& companion) {
  if (!low.same_grid(companion) || companion.degree() != low.degree() + 1) {
    throw std::invalid_argument("histopolation_operator: companion must share the grid and have degree + 1");
  }
  return histopolation_operator(low, greville_points(companion));
}

Spline1DSpace derivative_space(const Spline1DSpace& high) {
  if (high.degree() < 1) throw std::invalid_argument("derivative_space: degree must be >= 1");
  return Spline1DSpace(high.n_cells(), high.degree() - 1, high.boundary(), high.length());
}

SparseMatrix derivative_map(const Spline1DSpace& high) {
  const Spline1DSpace low = derivative_space(high);
  const int p = high.degree();
  std::vector<Eigen::Triplet<double>> t;
  if (high.periodic()) {
    const int n = high.dim();
    const double inv_h = 1.0 / high.cell_size();
    const int offset = (p / 2) - (p + 1) / 2;  // low shift minus high shift
    for (int i = 0; i < n; ++i) {
      t.emplace_back(positive_mod(i + offset, n), i, inv_h);
      t.emplace_back(positive_mod(i + offset + 1, n), i, -inv_h);
    }
  } else {
    const auto& kn = high.knots();
    for (int i = 0; i < low.dim(); ++i) {
      const double f = p / (kn[i + p + 1] - kn[i + 1]);
      t.emplace_back(i, i + 1, f);
      t.emplace_back(i, i, -f);
    }
  }
  SparseMatrix d(low.dim(), high.dim());
  d.setFromTriplets(t.begin(), t.end());
  return d;
}

}  // namespace feec_mhd
