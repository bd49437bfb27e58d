#pragma once

#include <string>
#include <vector>

#include "feec_mhd/diagnostics.hpp"

namespace feec_mhd {

/// Invariants table with a header row; throws std::runtime_error naming the
/// path on I/O failure.
void write_csv(const std::vector<InvariantsRow>& rows, const std::string& path);
std::vector<InvariantsRow> read_csv(const std::string& path);

struct SampleGrid {
  int nx = 0;  // points per direction, endpoints included
  int ny = 0;
};

/// Default snapshot grid: `per_cell` samples per cell and direction.
SampleGrid default_sample_grid(const DeRham2D& complex, int per_cell = 4);

/// Point data on a uniform grid, x index fastest.
struct VtkData {
  int nx = 0, ny = 0;
  std::array<double, 2> origin{0.0, 0.0};
  std::array<double, 2> spacing{1.0, 1.0};
  std::vector<std::string> scalar_names;
  std::vector<std::vector<double>> scalars;
  std::vector<std::string> vector_names;
  std::vector<std::vector<std::array<double, 2>>> vectors;
};

VtkData sample_state(const DeRham2D& complex, const EquationOfState& eos, const MHDState& state,
                     const SampleGrid& grid);

/// Legacy ASCII STRUCTURED_POINTS with rho, s, p, vorticity (scalars) and
/// u, B (vectors).
void write_vtk(const DeRham2D& complex, const EquationOfState& eos, const MHDState& state, const SampleGrid& grid,
               const std::string& path);
void write_vtk(const VtkData& data, const std::string& path);
VtkData read_vtk(const std::string& path);

}  // namespace feec_mhd
