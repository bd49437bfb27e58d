#include "feec_mhd/io.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace feec_mhd {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  return out;
}

void check_written(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace

void write_csv(const std::vector<InvariantsRow>& rows, const std::string& path) {
  std::ofstream out = open_out(path);
  const auto& h = invariants_header();
  for (std::size_t i = 0; i < h.size(); ++i) out << (i ? "," : "") << h[i];
  out << "\n";
  for (const auto& r : rows) {
    out << r.time << ',' << r.total_mass << ',' << r.total_entropy << ',' << r.total_energy << ',' << r.kinetic_energy
        << ',' << r.internal_energy << ',' << r.magnetic_energy << ',' << r.div_B_l2 << ',' << r.picard_iterations
        << ',' << r.potential_energy << "\n";
  }
  check_written(out, path);
}

std::vector<InvariantsRow> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::string line;
  std::getline(in, line);
  std::vector<InvariantsRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::vector<double> v;
    std::string cell;
    while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
    if (v.size() != invariants_header().size()) throw std::runtime_error("malformed row in '" + path + "'");
    InvariantsRow r;
    r.time = v[0];
    r.total_mass = v[1];
    r.total_entropy = v[2];
    r.total_energy = v[3];
    r.kinetic_energy = v[4];
    r.internal_energy = v[5];
    r.magnetic_energy = v[6];
    r.div_B_l2 = v[7];
    r.picard_iterations = static_cast<int>(v[8]);
    r.potential_energy = v[9];
    rows.push_back(r);
  }
  return rows;
}

SampleGrid default_sample_grid(const DeRham2D& complex, int per_cell) {
  return {complex.cells()[0] * per_cell + 1, complex.cells()[1] * per_cell + 1};
}

VtkData sample_state(const DeRham2D& complex, const EquationOfState& eos, const MHDState& state,
                     const SampleGrid& grid) {
  if (grid.nx < 2 || grid.ny < 2) throw std::invalid_argument("sample grid needs at least 2 points per direction");
  VtkData d;
  d.nx = grid.nx;
  d.ny = grid.ny;
  d.origin = complex.origin();
  d.spacing = {complex.lengths()[0] / (grid.nx - 1), complex.lengths()[1] / (grid.ny - 1)};
  const int n = grid.nx * grid.ny;
  Matrix pts(n, 2);
  for (int j = 0, k = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i, ++k) pts.row(k) << d.origin[0] + i * d.spacing[0], d.origin[1] + j * d.spacing[1];
  const Matrix rho = eval_field(complex, state.rho, pts);
  const Matrix s = eval_field(complex, state.s, pts);
  const Matrix u = eval_field(complex, state.u, pts);
  const Matrix gu = eval_field(complex, state.u, pts, EvalKind::grad);
  const Matrix b = eval_field(complex, state.B, pts);
  d.scalar_names = {"rho", "s", "p", "vorticity"};
  d.scalars.assign(4, std::vector<double>(n));
  d.vector_names = {"u", "B"};
  d.vectors.assign(2, std::vector<std::array<double, 2>>(n));
  for (int k = 0; k < n; ++k) {
    d.scalars[0][k] = rho(k, 0);
    d.scalars[1][k] = s(k, 0);
    d.scalars[2][k] = pressure(eos, rho(k, 0), s(k, 0));
    d.scalars[3][k] = gu(k, 2) - gu(k, 1);
    d.vectors[0][k] = {u(k, 0), u(k, 1)};
    d.vectors[1][k] = {b(k, 0), b(k, 1)};
  }
  return d;
}

void write_vtk(const VtkData& d, const std::string& path) {
  std::ofstream out = open_out(path);
  const int n = d.nx * d.ny;
  out << "# vtk DataFile Version 3.0\nfeec-mhd snapshot\nASCII\nDATASET STRUCTURED_POINTS\n";
  out << "DIMENSIONS " << d.nx << ' ' << d.ny << " 1\n";
  out << "ORIGIN " << d.origin[0] << ' ' << d.origin[1] << " 0\n";
  out << "SPACING " << d.spacing[0] << ' ' << d.spacing[1] << " 1\n";
  out << "POINT_DATA " << n << "\n";
  for (std::size_t f = 0; f < d.scalars.size(); ++f) {
    out << "SCALARS " << d.scalar_names[f] << " double 1\nLOOKUP_TABLE default\n";
    for (double v : d.scalars[f]) out << v << "\n";
  }
  for (std::size_t f = 0; f < d.vectors.size(); ++f) {
    out << "VECTORS " << d.vector_names[f] << " double\n";
    for (const auto& v : d.vectors[f]) out << v[0] << ' ' << v[1] << " 0\n";
  }
  check_written(out, path);
}

void write_vtk(const DeRham2D& complex, const EquationOfState& eos, const MHDState& state, const SampleGrid& grid,
               const std::string& path) {
  write_vtk(sample_state(complex, eos, state, grid), path);
}

VtkData read_vtk(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  VtkData d;
  std::string word;
  int n = 0;
  double z = 0.0;
  while (in >> word) {
    if (word == "DIMENSIONS") {
      int nz = 0;
      in >> d.nx >> d.ny >> nz;
    } else if (word == "ORIGIN") {
      in >> d.origin[0] >> d.origin[1] >> z;
    } else if (word == "SPACING") {
      in >> d.spacing[0] >> d.spacing[1] >> z;
    } else if (word == "POINT_DATA") {
      in >> n;
    } else if (word == "SCALARS") {
      std::string name, type, table, def;
      int comps = 0;
      in >> name >> type >> comps >> table >> def;
      std::vector<double> v(n);
      for (double& x : v) in >> x;
      d.scalar_names.push_back(name);
      d.scalars.push_back(std::move(v));
    } else if (word == "VECTORS") {
      std::string name, type;
      in >> name >> type;
      std::vector<std::array<double, 2>> v(n);
      for (auto& x : v) in >> x[0] >> x[1] >> z;
      d.vector_names.push_back(name);
      d.vectors.push_back(std::move(v));
    }
  }
  if (!in.eof()) throw std::runtime_error("malformed VTK file '" + path + "'");
  return d;
}

}  // namespace feec_mhd
