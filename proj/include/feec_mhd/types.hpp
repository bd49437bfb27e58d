#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <stdexcept>
#include <string>

namespace feec_mhd {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double>;

enum class Boundary { periodic, clamped };

/// Raised when a density-like field becomes non-positive where the
/// equation of state or the weighted mass requires positivity.
class PositivityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace feec_mhd
