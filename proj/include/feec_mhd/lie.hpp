#pragma once

#include <cstddef>
#include <optional>

#include "feec_mhd/derham.hpp"

namespace feec_mhd {

enum class FormKind { dens2, flux1 };

/// D1 P1(w u): transport of a density w along u.
FieldCoeffs lie_density(const DeRham2D& complex, const FieldCoeffs& u, const FieldCoeffs& c);

/// D0 P0(Bx uy - By ux) + P1((div B) u): transport of a flux field B along u.
FieldCoeffs lie_flux(const DeRham2D& complex, const FieldCoeffs& u, const FieldCoeffs& c);

/// Component i: P0(v . grad u_i - u . grad v_i).
FieldCoeffs hat_bracket(const DeRham2D& complex, const FieldCoeffs& u, const FieldCoeffs& v);

/// P0 of each velocity component; the identity on the velocity space.
FieldCoeffs hat_of_advection(const DeRham2D& complex, const FieldCoeffs& u);

/// C^{-T} f blockwise, so that <f, P w> = <result, readings of w>.
Vector projection_adjoint_apply(const DeRham2D& complex, SpaceTag tag, const Vector& functional);

/// Lie derivative along a fixed velocity, with the velocity samples it needs
/// cached once.
class AdvectionOperator {
 public:
  enum class Mode { matrix_free, assembled };

  AdvectionOperator(const DeRham2D& complex, const FieldCoeffs& u, FormKind kind);

  FormKind kind() const { return kind_; }
  Mode mode() const { return matrix_ ? Mode::assembled : Mode::matrix_free; }
  int dim() const;
  Vector apply(const Vector& c) const;
  /// Assembles column by column; returns false (staying matrix-free) when the
  /// matrix would exceed `max_entries` nonzeros.
  bool assemble(std::size_t max_entries);
  const SparseMatrix* matrix() const { return matrix_ ? &*matrix_ : nullptr; }

 private:
  Vector apply_matrix_free(const Vector& c) const;
  // P1(w u) for a density w.
  Vector density_flux(const FieldCoeffs& w) const;

  const DeRham2D* complex_;
  FormKind kind_;
  Matrix ux_xedge_, uy_xedge_;  // on greville x edge grid (x-flux DOFs)
  Matrix ux_yedge_, uy_yedge_;  // on edge x greville grid (y-flux DOFs)
  Matrix ux_node_, uy_node_;    // on the greville grid
  std::optional<SparseMatrix> matrix_;
};

/// Column-assembled advection operator; falls back to matrix-free mode when
/// the entry budget is exceeded.
AdvectionOperator assemble_advection_matrix(const DeRham2D& complex, const FieldCoeffs& u, FormKind kind,
                                            std::size_t max_entries = 50'000'000);

}  // namespace feec_mhd
