#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "feec_mhd/derham.hpp"
#include "feec_mhd/eos.hpp"

namespace feec_mhd {

/// Max |entry| of D1 D0.
double complex_defect(const DeRham2D& complex);

/// Max over `samples` random velocity fields of |hat(A_u) - u|_inf.
double hat_identity_defect(const DeRham2D& complex, int samples, std::uint32_t seed = 7);

/// Max of |D0 P0 f - P1 rot f|_inf and |D1 P1 F - P2 div F|_inf over a fixed
/// battery of smooth periodic fields.
double commuting_defect(const DeRham2D& complex);

/// Max relative defect of c_rho drho + c_s ds = d(rho e) over random state
/// pairs, including near-coincident ones.
double discrete_gradient_defect(const EquationOfState& eos, int samples, std::uint32_t seed = 11);

struct CheckResult {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool pass() const { return value <= bound; }
};

/// Fast structural and conservation checks run by `invariants-check`.
std::vector<CheckResult> property_suite();

}  // namespace feec_mhd
