#include "feec_mhd/lie.hpp"

namespace feec_mhd {

namespace {

void require(const FieldCoeffs& c, SpaceTag tag, const char* what) {
  if (c.tag != tag) throw std::invalid_argument(std::string(what) + ": expected a " + std::string(to_string(tag)) + " field");
}

}  // namespace

AdvectionOperator::AdvectionOperator(const DeRham2D& complex, const FieldCoeffs& u, FormKind kind)
    : complex_(&complex), kind_(kind) {
  require(u, SpaceTag::velocity, "AdvectionOperator");
  ux_xedge_ = sample(complex, u, 0, PointSet::greville, PointSet::edge);
  uy_xedge_ = sample(complex, u, 1, PointSet::greville, PointSet::edge);
  ux_yedge_ = sample(complex, u, 0, PointSet::edge, PointSet::greville);
  uy_yedge_ = sample(complex, u, 1, PointSet::edge, PointSet::greville);
  if (kind == FormKind::flux1) {
    ux_node_ = sample(complex, u, 0, PointSet::greville, PointSet::greville);
    uy_node_ = sample(complex, u, 1, PointSet::greville, PointSet::greville);
  }
}

int AdvectionOperator::dim() const {
  return complex_->dim(kind_ == FormKind::dens2 ? SpaceTag::dens2 : SpaceTag::flux1);
}

Vector AdvectionOperator::density_flux(const FieldCoeffs& w) const {
  const DeRham2D& cx = *complex_;
  FieldCoeffs out = zero_field(cx, SpaceTag::flux1);
  const auto& blocks = cx.blocks(SpaceTag::flux1);
  const Matrix wx = sample(cx, w, 0, PointSet::greville, PointSet::edge);
  const Matrix wy = sample(cx, w, 0, PointSet::edge, PointSet::greville);
  block_view(out, blocks[0]) = project_block_from_samples(cx, Factor::high, Factor::low, wx.cwiseProduct(ux_xedge_));
  block_view(out, blocks[1]) = project_block_from_samples(cx, Factor::low, Factor::high, wy.cwiseProduct(uy_yedge_));
  return out.coeffs;
}

Vector AdvectionOperator::apply_matrix_free(const Vector& c) const {
  const DeRham2D& cx = *complex_;
  if (kind_ == FormKind::dens2) return cx.d1() * density_flux({SpaceTag::dens2, c});

  const FieldCoeffs b{SpaceTag::flux1, c};
  const Matrix bx = sample(cx, b, 0, PointSet::greville, PointSet::greville);
  const Matrix by = sample(cx, b, 1, PointSet::greville, PointSet::greville);
  const Matrix psi = bx.cwiseProduct(uy_node_) - by.cwiseProduct(ux_node_);
  const Matrix p0 = project_block_from_samples(cx, Factor::high, Factor::high, psi);
  const Eigen::Map<const Vector> p0v(p0.data(), p0.size());
  Vector out = cx.d0() * p0v;
  const Vector div = cx.d1() * c;
  if (div.lpNorm<Eigen::Infinity>() > 0.0) out += density_flux({SpaceTag::dens2, div});
  return out;
}

Vector AdvectionOperator::apply(const Vector& c) const {
  if (c.size() != dim()) throw std::invalid_argument("AdvectionOperator::apply: dimension mismatch");
  if (matrix_) return *matrix_ * c;
  return apply_matrix_free(c);
}

bool AdvectionOperator::assemble(std::size_t max_entries) {
  const int n = dim();
  std::vector<Eigen::Triplet<double>> t;
  Vector e = Vector::Zero(n);
  for (int j = 0; j < n; ++j) {
    e(j) = 1.0;
    const Vector col = apply_matrix_free(e);
    e(j) = 0.0;
    for (int i = 0; i < n; ++i)
      if (col(i) != 0.0) t.emplace_back(i, j, col(i));
    if (t.size() > max_entries) return false;
  }
  SparseMatrix m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  matrix_ = std::move(m);
  return true;
}

AdvectionOperator assemble_advection_matrix(const DeRham2D& complex, const FieldCoeffs& u, FormKind kind,
                                            std::size_t max_entries) {
  AdvectionOperator op(complex, u, kind);
  op.assemble(max_entries);
  return op;
}

FieldCoeffs lie_density(const DeRham2D& complex, const FieldCoeffs& u, const FieldCoeffs& c) {
  require(c, SpaceTag::dens2, "lie_density");
  return {SpaceTag::dens2, AdvectionOperator(complex, u, FormKind::dens2).apply(c.coeffs)};
}

FieldCoeffs lie_flux(const DeRham2D& complex, const FieldCoeffs& u, const FieldCoeffs& c) {
  require(c, SpaceTag::flux1, "lie_flux");
  return {SpaceTag::flux1, AdvectionOperator(complex, u, FormKind::flux1).apply(c.coeffs)};
}

FieldCoeffs hat_bracket(const DeRham2D& complex, const FieldCoeffs& u, const FieldCoeffs& v) {
  require(u, SpaceTag::velocity, "hat_bracket");
  require(v, SpaceTag::velocity, "hat_bracket");
  const PointSet g = PointSet::greville;
  const Matrix ux = sample(complex, u, 0, g, g), uy = sample(complex, u, 1, g, g);
  const Matrix vx = sample(complex, v, 0, g, g), vy = sample(complex, v, 1, g, g);
  FieldCoeffs out = zero_field(complex, SpaceTag::velocity);
  for (int i = 0; i < 2; ++i) {
    const Matrix s = vx.cwiseProduct(sample(complex, u, i, g, g, 1, 0)) + vy.cwiseProduct(sample(complex, u, i, g, g, 0, 1)) -
                     ux.cwiseProduct(sample(complex, v, i, g, g, 1, 0)) - uy.cwiseProduct(sample(complex, v, i, g, g, 0, 1));
    block_view(out, complex.blocks(SpaceTag::velocity)[i]) =
        project_block_from_samples(complex, Factor::high, Factor::high, s);
  }
  return out;
}

FieldCoeffs hat_of_advection(const DeRham2D& complex, const FieldCoeffs& u) {
  require(u, SpaceTag::velocity, "hat_of_advection");
  const PointSet g = PointSet::greville;
  FieldCoeffs out = zero_field(complex, SpaceTag::velocity);
  for (int i = 0; i < 2; ++i)
    block_view(out, complex.blocks(SpaceTag::velocity)[i]) =
        project_block_from_samples(complex, Factor::high, Factor::high, sample(complex, u, i, g, g));
  return out;
}

Vector projection_adjoint_apply(const DeRham2D& complex, SpaceTag tag, const Vector& functional) {
  if (functional.size() != complex.dim(tag)) throw std::invalid_argument("projection_adjoint_apply: dimension mismatch");
  FieldCoeffs f{tag, functional};
  FieldCoeffs out = zero_field(complex, tag);
  for (const auto& b : complex.blocks(tag))
    block_view(out, b) = solve_block_transpose(complex, b.fx, b.fy, block_view(f, b));
  return out.coeffs;
}

}  // namespace feec_mhd
