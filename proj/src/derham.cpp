#include "feec_mhd/derham.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>

#include "feec_mhd/krylov.hpp"

namespace feec_mhd {

namespace {

int set_index(PointSet s) { return static_cast<int>(s); }
int factor_index(Factor f) { return f == Factor::high ? 0 : 1; }

SparseMatrix integration_matrix(const IntervalQuadrature& q) {
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(q.points.size());
  for (std::size_t k = 0; k < q.points.size(); ++k) t.emplace_back(q.interval[k], static_cast<int>(k), q.weights[k]);
  SparseMatrix j(q.n_intervals, static_cast<int>(q.points.size()));
  j.setFromTriplets(t.begin(), t.end());
  return j;
}

SparseMatrix identity(int n) {
  SparseMatrix i(n, n);
  i.setIdentity();
  return i;
}

SparseMatrix block_diagonal(const SparseMatrix& a, const SparseMatrix& b) {
  std::vector<Eigen::Triplet<double>> t;
  for (int k = 0; k < a.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) t.emplace_back(it.row(), it.col(), it.value());
  for (int k = 0; k < b.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(b, k); it; ++it) t.emplace_back(a.rows() + it.row(), a.cols() + it.col(), it.value());
  SparseMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

SparseMatrix stack_rows(const SparseMatrix& a, const SparseMatrix& b) {
  std::vector<Eigen::Triplet<double>> t;
  for (int k = 0; k < a.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) t.emplace_back(it.row(), it.col(), it.value());
  for (int k = 0; k < b.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(b, k); it; ++it) t.emplace_back(a.rows() + it.row(), it.col(), it.value());
  SparseMatrix m(a.rows() + b.rows(), a.cols());
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

SparseMatrix stack_cols(const SparseMatrix& a, const SparseMatrix& b) {
  std::vector<Eigen::Triplet<double>> t;
  for (int k = 0; k < a.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) t.emplace_back(it.row(), it.col(), it.value());
  for (int k = 0; k < b.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(b, k); it; ++it) t.emplace_back(it.row(), a.cols() + it.col(), it.value());
  SparseMatrix m(a.rows(), a.cols() + b.cols());
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix k = Eigen::kroneckerProduct(a, b);
  return k;
}

// Maps samples on the DOF points of a factor to its readings.
Matrix readings_x(const Direction& d, Factor f, const Matrix& s) {
  return f == Factor::high ? s : Matrix(d.edge_integration() * s);
}

}  // namespace

std::string_view to_string(SpaceTag tag) {
  switch (tag) {
    case SpaceTag::form0: return "form0";
    case SpaceTag::flux1: return "flux1";
    case SpaceTag::dens2: return "dens2";
    case SpaceTag::velocity: return "velocity";
  }
  return "unknown";
}

Direction::Direction(int n_cells, int p, Boundary boundary, double length, double origin)
    : high_(n_cells, p + 1, boundary, length),
      low_(derivative_space(high_)),
      interp_(interpolation_operator(high_)),
      histo_(histopolation_operator(low_, high_)),
      deriv_(derivative_map(high_)),
      origin_(origin),
      quad_per_cell_(p + 2) {
  const double period = high_.periodic() ? length : 0.0;
  const double h = high_.cell_size();

  points_[set_index(PointSet::greville)] = interp_.nodes();

  const IntervalQuadrature cells = interval_quadrature(high_.breakpoints(), h, quad_per_cell_, 0.0);
  points_[set_index(PointSet::cell)] = cells.points;
  cell_weights_ = Eigen::Map<const Vector>(cells.weights.data(), static_cast<Eigen::Index>(cells.weights.size()));

  const IntervalQuadrature edges = interval_quadrature(histo_.nodes(), h, quad_per_cell_, period);
  points_[set_index(PointSet::edge)] = edges.points;
  edge_integration_ = integration_matrix(edges);
  fine_edge_ = interval_quadrature(histo_.nodes(), h, 10, period);

  for (PointSet s : {PointSet::greville, PointSet::cell, PointSet::edge}) {
    for (Factor f : {Factor::high, Factor::low}) {
      const Spline1DSpace& sp = space(f);
      for (int d = 0; d <= std::min(1, sp.degree()); ++d)
        basis_[set_index(s)][factor_index(f)][d] = collocation_matrix(sp, points_[set_index(s)], d);
    }
  }
  for (Factor f : {Factor::high, Factor::low}) {
    const SparseMatrix& b = basis(PointSet::cell, f);
    SparseMatrix m = b.transpose() * cell_weights_.asDiagonal() * b;
    (f == Factor::high ? mass_high_ : mass_low_) = m;
  }
}

const std::vector<double>& Direction::points(PointSet s) const { return points_[set_index(s)]; }

const SparseMatrix& Direction::basis(PointSet s, Factor f, int deriv) const {
  if (deriv < 0 || deriv > std::min(1, space(f).degree()))
    throw std::invalid_argument("Direction::basis: unsupported derivative order");
  return basis_[set_index(s)][factor_index(f)][deriv];
}

DeRham2D::DeRham2D(int nx, int ny, int p, double lx, double ly, Boundary bx, Boundary by,
                   std::array<double, 2> origin)
    : p_(p), dirs_{Direction(nx, p, bx, lx, origin[0]), Direction(ny, p, by, ly, origin[1])} {
  if (p < 1) throw std::invalid_argument("de Rham complex: degree must be >= 1");
  const int hx = dirs_[0].space(Factor::high).dim(), lx_dim = dirs_[0].space(Factor::low).dim();
  const int hy = dirs_[1].space(Factor::high).dim(), ly_dim = dirs_[1].space(Factor::low).dim();

  blocks_[static_cast<int>(SpaceTag::form0)] = {{Factor::high, Factor::high, hx, hy, 0}};
  blocks_[static_cast<int>(SpaceTag::flux1)] = {{Factor::high, Factor::low, hx, ly_dim, 0},
                                                {Factor::low, Factor::high, lx_dim, hy, hx * ly_dim}};
  blocks_[static_cast<int>(SpaceTag::dens2)] = {{Factor::low, Factor::low, lx_dim, ly_dim, 0}};
  blocks_[static_cast<int>(SpaceTag::velocity)] = {{Factor::high, Factor::high, hx, hy, 0},
                                                   {Factor::high, Factor::high, hx, hy, hx * hy}};

  const SparseMatrix& dx = dirs_[0].derivative();
  const SparseMatrix& dy = dirs_[1].derivative();
  d0_ = stack_rows(kron(dy, identity(hx)), SparseMatrix(-kron(identity(hy), dx)));
  d1_ = stack_cols(kron(identity(ly_dim), dx), kron(dy, identity(lx_dim)));

  const auto& mxh = dirs_[0].mass(Factor::high);
  const auto& mxl = dirs_[0].mass(Factor::low);
  const auto& myh = dirs_[1].mass(Factor::high);
  const auto& myl = dirs_[1].mass(Factor::low);
  const SparseMatrix m0 = kron(myh, mxh);
  mass_[static_cast<int>(SpaceTag::form0)] = m0;
  mass_[static_cast<int>(SpaceTag::flux1)] = block_diagonal(kron(myl, mxh), kron(myh, mxl));
  mass_[static_cast<int>(SpaceTag::dens2)] = kron(myl, mxl);
  mass_[static_cast<int>(SpaceTag::velocity)] = block_diagonal(m0, m0);

  velocity_constraints_.assign(2 * hx * hy, false);
  if (bx == Boundary::clamped) {
    for (int j = 0; j < hy; ++j) {
      velocity_constraints_[j * hx] = true;
      velocity_constraints_[j * hx + hx - 1] = true;
    }
  }
  if (by == Boundary::clamped) {
    for (int i = 0; i < hx; ++i) {
      velocity_constraints_[hx * hy + i] = true;
      velocity_constraints_[hx * hy + (hy - 1) * hx + i] = true;
    }
  }
}

int DeRham2D::dim(SpaceTag tag) const {
  int n = 0;
  for (const Block& b : blocks(tag)) n += b.rows * b.cols;
  return n;
}

DeRham2D build_derham(int nx, int ny, int p, double lx, double ly, Boundary bx, Boundary by,
                      std::array<double, 2> origin) {
  return DeRham2D(nx, ny, p, lx, ly, bx, by, origin);
}

FieldCoeffs zero_field(const DeRham2D& complex, SpaceTag tag) { return {tag, Vector::Zero(complex.dim(tag))}; }

Eigen::Map<const Matrix> block_view(const FieldCoeffs& c, const DeRham2D::Block& b) {
  return Eigen::Map<const Matrix>(c.coeffs.data() + b.offset, b.rows, b.cols);
}

Eigen::Map<Matrix> block_view(FieldCoeffs& c, const DeRham2D::Block& b) {
  return Eigen::Map<Matrix>(c.coeffs.data() + b.offset, b.rows, b.cols);
}

Matrix sample(const DeRham2D& complex, const FieldCoeffs& c, int comp, PointSet sx, PointSet sy, int dx, int dy) {
  const DeRham2D::Block& b = complex.blocks(c.tag).at(comp);
  const SparseMatrix& bx = complex.dir(0).basis(sx, b.fx, dx);
  const SparseMatrix& by = complex.dir(1).basis(sy, b.fy, dy);
  const Matrix t = bx * block_view(c, b);
  return t * by.transpose();
}

Matrix pair_block(const DeRham2D& complex, Factor fx, Factor fy, PointSet sx, PointSet sy, const Matrix& g, int dx,
                  int dy) {
  const SparseMatrix& bx = complex.dir(0).basis(sx, fx, dx);
  const SparseMatrix& by = complex.dir(1).basis(sy, fy, dy);
  const Matrix t = bx.transpose() * g;
  return t * by;
}

Matrix cell_weights(const DeRham2D& complex) {
  return complex.dir(0).cell_weights() * complex.dir(1).cell_weights().transpose();
}

std::pair<Vector, Vector> grid_coordinates(const DeRham2D& complex, PointSet sx, PointSet sy) {
  const auto& px = complex.dir(0).points(sx);
  const auto& py = complex.dir(1).points(sy);
  Vector x(px.size()), y(py.size());
  for (std::size_t i = 0; i < px.size(); ++i) x(i) = complex.dir(0).origin() + px[i];
  for (std::size_t j = 0; j < py.size(); ++j) y(j) = complex.dir(1).origin() + py[j];
  return {x, y};
}

Matrix solve_block(const DeRham2D& complex, Factor fx, Factor fy, const Matrix& readings) {
  const Matrix t = complex.dir(0).dofs(fx).apply(readings);
  return complex.dir(1).dofs(fy).apply(t.transpose()).transpose();
}

Matrix solve_block_transpose(const DeRham2D& complex, Factor fx, Factor fy, const Matrix& functional) {
  const Matrix t = complex.dir(1).dofs(fy).apply_transpose(functional.transpose());
  return complex.dir(0).dofs(fx).apply_transpose(t.transpose());
}

Matrix project_block_from_samples(const DeRham2D& complex, Factor fx, Factor fy, const Matrix& samples) {
  const Matrix rx = readings_x(complex.dir(0), fx, samples);
  const Matrix r = readings_x(complex.dir(1), fy, rx.transpose()).transpose();
  return solve_block(complex, fx, fy, r);
}

Matrix project_block_adjoint(const DeRham2D& complex, Factor fx, Factor fy, const Matrix& functional) {
  Matrix g = solve_block_transpose(complex, fx, fy, functional);
  if (fx == Factor::low) g = complex.dir(0).edge_integration().transpose() * g;
  if (fy == Factor::low) g = g * complex.dir(1).edge_integration();
  return g;
}

namespace {

// Readings of a general function for block factors (fx, fy): point values
// along high factors, fine-quadrature sub-interval integrals along low ones.
Matrix function_readings(const DeRham2D& complex, Factor fx, Factor fy, const ScalarFunction& f) {
  const Direction& dx = complex.dir(0);
  const Direction& dy = complex.dir(1);
  const std::vector<double>& px = fx == Factor::high ? dx.points(PointSet::greville) : dx.fine_edge().points;
  const std::vector<double>& py = fy == Factor::high ? dy.points(PointSet::greville) : dy.fine_edge().points;
  Matrix s(px.size(), py.size());
  for (std::size_t j = 0; j < py.size(); ++j)
    for (std::size_t i = 0; i < px.size(); ++i) s(i, j) = f(dx.origin() + px[i], dy.origin() + py[j]);
  if (fx == Factor::low) s = integration_matrix(dx.fine_edge()) * s;
  if (fy == Factor::low) s = s * integration_matrix(dy.fine_edge()).transpose();
  return s;
}

void project_into(const DeRham2D& complex, FieldCoeffs& c, int comp, const ScalarFunction& f) {
  const DeRham2D::Block& b = complex.blocks(c.tag)[comp];
  block_view(c, b) = solve_block(complex, b.fx, b.fy, function_readings(complex, b.fx, b.fy, f));
}

}  // namespace

FieldCoeffs project0(const DeRham2D& complex, const ScalarFunction& f) {
  FieldCoeffs c = zero_field(complex, SpaceTag::form0);
  project_into(complex, c, 0, f);
  return c;
}

FieldCoeffs project1(const DeRham2D& complex, const ScalarFunction& fx, const ScalarFunction& fy) {
  FieldCoeffs c = zero_field(complex, SpaceTag::flux1);
  project_into(complex, c, 0, fx);
  project_into(complex, c, 1, fy);
  return c;
}

FieldCoeffs project2(const DeRham2D& complex, const ScalarFunction& f) {
  FieldCoeffs c = zero_field(complex, SpaceTag::dens2);
  project_into(complex, c, 0, f);
  return c;
}

FieldCoeffs project_velocity(const DeRham2D& complex, const ScalarFunction& fx, const ScalarFunction& fy) {
  FieldCoeffs c = zero_field(complex, SpaceTag::velocity);
  project_into(complex, c, 0, fx);
  project_into(complex, c, 1, fy);
  return c;
}

FieldCoeffs apply_d0(const DeRham2D& complex, const FieldCoeffs& c) {
  if (c.tag != SpaceTag::form0) throw std::invalid_argument("apply_d0: expected a form0 field");
  return {SpaceTag::flux1, complex.d0() * c.coeffs};
}

FieldCoeffs apply_d1(const DeRham2D& complex, const FieldCoeffs& c) {
  if (c.tag != SpaceTag::flux1) throw std::invalid_argument("apply_d1: expected a flux1 field");
  return {SpaceTag::dens2, complex.d1() * c.coeffs};
}

Matrix eval_field(const DeRham2D& complex, const FieldCoeffs& c, const Matrix& points, EvalKind kind) {
  const auto& blocks = complex.blocks(c.tag);
  const bool grad = kind == EvalKind::grad;
  if (grad && c.tag != SpaceTag::form0 && c.tag != SpaceTag::velocity)
    throw std::invalid_argument("eval_field: gradients are available for form0 and velocity fields");
  const int per_block = grad ? 2 : 1;
  Matrix out(points.rows(), static_cast<int>(blocks.size()) * per_block);
  for (Eigen::Index q = 0; q < points.rows(); ++q) {
    const double x = points(q, 0) - complex.dir(0).origin();
    const double y = points(q, 1) - complex.dir(1).origin();
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
      const auto& b = blocks[bi];
      const auto& sx = complex.dir(0).space(b.fx);
      const auto& sy = complex.dir(1).space(b.fy);
      int fxi = 0, fyi = 0;
      const int md = grad ? 1 : 0;
      const Matrix bx = eval_basis_derivatives(sx, x, md, fxi);
      const Matrix by = eval_basis_derivatives(sy, y, md, fyi);
      const auto coeff = block_view(c, b);
      for (int k = 0; k < per_block; ++k) {
        const int ox = grad ? (k == 0 ? 1 : 0) : 0;
        const int oy = grad ? (k == 1 ? 1 : 0) : 0;
        double v = 0.0;
        for (int a = 0; a <= sx.degree(); ++a) {
          const int i = sx.periodic() ? (fxi + a) % sx.dim() : fxi + a;
          for (int e = 0; e <= sy.degree(); ++e) {
            const int j = sy.periodic() ? (fyi + e) % sy.dim() : fyi + e;
            v += coeff(i, j) * bx(a, ox) * by(e, oy);
          }
        }
        out(q, static_cast<int>(bi) * per_block + k) = v;
      }
    }
  }
  return out;
}

SparseMatrix mass_matrix(const DeRham2D& complex, SpaceTag tag) { return complex.mass(tag); }

namespace {

Matrix positive_density_weights(const DeRham2D& complex, const FieldCoeffs& rho) {
  if (rho.tag != SpaceTag::dens2) throw std::invalid_argument("weighted mass: density must be a dens2 field");
  const Matrix r = sample(complex, rho, 0, PointSet::cell, PointSet::cell);
  if (!(r.minCoeff() > 0.0))
    throw PositivityError("positivity loss: density minimum " + std::to_string(r.minCoeff()) +
                          " at a quadrature point");
  return r.cwiseProduct(cell_weights(complex));
}

}  // namespace

SparseMatrix weighted_velocity_mass(const DeRham2D& complex, const FieldCoeffs& rho) {
  const Matrix w = positive_density_weights(complex, rho);
  const SparseMatrix b = kron(complex.dir(1).basis(PointSet::cell, Factor::high),
                              complex.dir(0).basis(PointSet::cell, Factor::high));
  const Eigen::Map<const Vector> wv(w.data(), w.size());
  const SparseMatrix m = b.transpose() * wv.asDiagonal() * b;
  return block_diagonal(m, m);
}

WeightedVelocityMass::WeightedVelocityMass(const DeRham2D& complex, const FieldCoeffs& rho)
    : complex_(&complex), weight_(positive_density_weights(complex, rho)) {
  const SparseMatrix& bx = complex.dir(0).basis(PointSet::cell, Factor::high);
  const SparseMatrix& by = complex.dir(1).basis(PointSet::cell, Factor::high);
  const SparseMatrix bx2 = bx.cwiseProduct(bx);
  const SparseMatrix by2 = by.cwiseProduct(by);
  const Matrix t = bx2.transpose() * weight_;
  const Matrix d = t * by2;
  const Eigen::Map<const Vector> dv(d.data(), d.size());
  diagonal_.resize(2 * d.size());
  diagonal_ << dv, dv;
  mx_.compute(Matrix(complex.dir(0).mass(Factor::high)));
  my_.compute(Matrix(complex.dir(1).mass(Factor::high)));
}

Vector WeightedVelocityMass::apply(const Vector& u) const {
  const auto& blocks = complex_->blocks(SpaceTag::velocity);
  const SparseMatrix& bx = complex_->dir(0).basis(PointSet::cell, Factor::high);
  const SparseMatrix& by = complex_->dir(1).basis(PointSet::cell, Factor::high);
  Vector out(u.size());
  for (const auto& b : blocks) {
    const Eigen::Map<const Matrix> x(u.data() + b.offset, b.rows, b.cols);
    const Matrix t = bx * x;
    const Matrix s = (t * by.transpose()).cwiseProduct(weight_);
    const Matrix r = bx.transpose() * s;
    Eigen::Map<Matrix>(out.data() + b.offset, b.rows, b.cols) = r * by;
  }
  return out;
}

Vector WeightedVelocityMass::precondition(const Vector& r) const {
  const auto& blocks = complex_->blocks(SpaceTag::velocity);
  const auto& mask = complex_->velocity_constraints();
  Vector out(r.size());
  for (const auto& b : blocks) {
    const Eigen::Map<const Matrix> x(r.data() + b.offset, b.rows, b.cols);
    const Matrix t = mx_.solve(x);
    Eigen::Map<Matrix>(out.data() + b.offset, b.rows, b.cols) = my_.solve(t.transpose()).transpose();
  }
  for (Eigen::Index i = 0; i < out.size(); ++i)
    if (mask[i]) out(i) = 0.0;
  return out;
}

Vector WeightedVelocityMass::solve(const Vector& b, double rel_tol, int* iterations) const {
  const auto& mask = complex_->velocity_constraints();
  auto masked = [&](Vector v) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (mask[i]) v(i) = 0.0;
    return v;
  };
  const Vector rhs = masked(b);
  const KrylovResult res = conjugate_gradient([&](const Vector& v) { return masked(apply(v)); }, rhs,
                                              [&](const Vector& v) { return precondition(v); },
                                              Vector::Zero(b.size()), rel_tol, 10 * static_cast<int>(b.size()) + 100);
  if (iterations) *iterations = res.iterations;
  return res.x;
}

double l2_error(const DeRham2D& complex, const FieldCoeffs& c, const ScalarFunction& reference) {
  if (complex.blocks(c.tag).size() != 1) throw std::invalid_argument("l2_error: expected a scalar field");
  const Matrix v = sample(complex, c, 0, PointSet::cell, PointSet::cell);
  const auto [x, y] = grid_coordinates(complex, PointSet::cell, PointSet::cell);
  const Matrix w = cell_weights(complex);
  double s = 0.0;
  for (Eigen::Index j = 0; j < y.size(); ++j)
    for (Eigen::Index i = 0; i < x.size(); ++i) s += w(i, j) * std::pow(v(i, j) - reference(x(i), y(j)), 2);
  return std::sqrt(s);
}

double l2_error(const DeRham2D& complex, const FieldCoeffs& c, const ScalarFunction& ref_x,
                const ScalarFunction& ref_y) {
  if (complex.blocks(c.tag).size() != 2) throw std::invalid_argument("l2_error: expected a vector field");
  const auto [x, y] = grid_coordinates(complex, PointSet::cell, PointSet::cell);
  const Matrix w = cell_weights(complex);
  double s = 0.0;
  for (int comp = 0; comp < 2; ++comp) {
    const Matrix v = sample(complex, c, comp, PointSet::cell, PointSet::cell);
    const ScalarFunction& ref = comp == 0 ? ref_x : ref_y;
    for (Eigen::Index j = 0; j < y.size(); ++j)
      for (Eigen::Index i = 0; i < x.size(); ++i) s += w(i, j) * std::pow(v(i, j) - ref(x(i), y(j)), 2);
  }
  return std::sqrt(s);
}

}  // namespace feec_mhd
