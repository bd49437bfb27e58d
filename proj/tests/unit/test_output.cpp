#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include "feec_mhd/cli.hpp"
#include "feec_mhd/convergence.hpp"
#include "feec_mhd/io.hpp"
#include "feec_mhd/scenarios.hpp"

using namespace feec_mhd;
namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("feec_mhd_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "feec-mhd");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

std::size_t line_count(const fs::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  for (std::string l; std::getline(in, l);) ++n;
  return n;
}

}  // namespace

TEST_CASE("invariants of simple states") {
  const DeRham2D c = build_derham(8, 8, 2, pi, pi, Boundary::periodic, Boundary::periodic);
  MHDState s;
  s.u = project_velocity(c, [](double, double) { return 0.0; }, [](double, double) { return 0.0; });
  s.rho = project2(c, [](double, double) { return 1.0; });
  s.s = project2(c, [](double, double) { return 0.0; });
  s.B = project1(c, [](double x, double y) { return std::sin(2 * x) * std::cos(2 * y); },
                 [](double x, double y) { return -std::cos(2 * x) * std::sin(2 * y); });
  const EquationOfState baro = EquationOfState::barotropic();
  const InvariantsRow row = invariants(c, baro, GravitySpec{}, s, 4);
  CHECK(row.total_mass == doctest::Approx(pi * pi).epsilon(1e-14));
  CHECK(row.div_B_l2 <= 1e-12);
  CHECK(row.picard_iterations == 4);
  CHECK(row.total_energy ==
        doctest::Approx(row.kinetic_energy + row.internal_energy + row.magnetic_energy).epsilon(1e-12));
  CHECK(pressure_field(c, baro, s)(0.3, 1.1) == doctest::Approx(0.5));
}

TEST_CASE("vorticity") {
  const DeRham2D c = build_derham(32, 32, 2, 2 * pi, 2 * pi, Boundary::periodic, Boundary::periodic);
  const FieldCoeffs u = project_velocity(c, [](double, double y) { return -std::sin(y); },
                                         [](double x, double) { return std::sin(x); });
  const ScalarFunction w = vorticity_field(c, u);
  for (double x : {0.1, 1.7, 4.0})
    for (double y : {0.5, 2.2, 6.0}) CHECK(std::abs(w(x, y) - (std::cos(x) + std::cos(y))) < 1e-4);
  CHECK(max_abs_vorticity(c, u) == doctest::Approx(2.0).epsilon(1e-3));

  const FieldCoeffs k = project_velocity(c, [](double, double) { return 0.3; }, [](double, double) { return 2.0; });
  CHECK(max_abs_vorticity(c, k) < 1e-12);
}

TEST_CASE("csv layout and round trip") {
  const std::vector<std::string> golden = {"time",           "total_mass",      "total_entropy",
                                           "total_energy",   "kinetic_energy",  "internal_energy",
                                           "magnetic_energy", "div_B_l2",       "picard_iterations",
                                           "potential_energy"};
  CHECK(invariants_header() == golden);
  const fs::path dir = scratch("csv");
  write_csv({}, (dir / "empty.csv").string());
  CHECK(line_count(dir / "empty.csv") == 1);

  std::vector<InvariantsRow> rows(3);
  for (int i = 0; i < 3; ++i) {
    rows[i].time = 0.1 * i;
    rows[i].total_mass = pi / 3.0 + i;
    rows[i].total_energy = std::exp(1.0) * 1e-7;
    rows[i].div_B_l2 = 1e-300;
    rows[i].picard_iterations = i + 5;
    rows[i].potential_energy = -1.0 / 7.0;
  }
  write_csv(rows, (dir / "rows.csv").string());
  const auto back = read_csv((dir / "rows.csv").string());
  REQUIRE(back.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(back[i].time == rows[i].time);
    CHECK(back[i].total_mass == rows[i].total_mass);
    CHECK(back[i].total_energy == rows[i].total_energy);
    CHECK(back[i].div_B_l2 == rows[i].div_B_l2);
    CHECK(back[i].picard_iterations == rows[i].picard_iterations);
    CHECK(back[i].potential_energy == rows[i].potential_energy);
  }
  CHECK_THROWS_AS(write_csv(rows, (dir / "missing" / "x.csv").string()), std::runtime_error);
  CHECK_THROWS_AS(read_csv((dir / "missing.csv").string()), std::runtime_error);
}

TEST_CASE("vtk round trip is exact") {
  const ScenarioSpec ot = orszag_tang();
  const DeRham2D c = build_complex(ot, 6, 6, 2);
  const MHDState st = initial_state(c, ot);
  const SampleGrid g = default_sample_grid(c);
  CHECK(g.nx == 25);
  CHECK(g.ny == 25);
  const VtkData d = sample_state(c, ot.eos, st, g);
  const fs::path dir = scratch("vtk");
  write_vtk(c, ot.eos, st, g, (dir / "s.vtk").string());
  const VtkData r = read_vtk((dir / "s.vtk").string());
  CHECK(r.nx == d.nx);
  CHECK(r.ny == d.ny);
  CHECK(r.scalar_names == std::vector<std::string>{"rho", "s", "p", "vorticity"});
  CHECK(r.vector_names == std::vector<std::string>{"u", "B"});
  REQUIRE(r.scalars.size() == d.scalars.size());
  for (std::size_t k = 0; k < d.scalars.size(); ++k) {
    CHECK(r.scalars[k].size() == static_cast<std::size_t>(g.nx * g.ny));
    CHECK(r.scalars[k] == d.scalars[k]);
  }
  for (std::size_t k = 0; k < d.vectors.size(); ++k) CHECK(r.vectors[k] == d.vectors[k]);
}

TEST_CASE("observed order") {
  CHECK(*observed_order(4e-2, 1e-2, 0.2, 0.1) == doctest::Approx(2.0));
  const double e0 = 5.1e-3, e1 = 1.2e-3, h0 = pi / 16, h1 = pi / 32;
  CHECK(*observed_order(e0, e1, h0, h1) == std::log(e0 / e1) / std::log(h0 / h1));
  CHECK(*observed_order(e0, e1, h0, h1) == doctest::Approx(2.09).epsilon(0.01));
  CHECK_FALSE(observed_order(0.0, 0.0, h0, h1).has_value());
  CHECK_FALSE(observed_order(1e-3, 0.0, h0, h1).has_value());

  const ScenarioSpec tg = taylor_green_barotropic();
  const DeRham2D c = build_complex(tg, 8, 8, 1);
  const MHDState s = initial_state(c, tg);
  const auto [er, eu] = state_distance(c, s, c, s);
  CHECK(er == 0.0);
  CHECK(eu == 0.0);
}

TEST_CASE("small convergence study") {
  const ScenarioSpec tg = taylor_green_barotropic();
  const auto reports = convergence_study(tg, {1}, {4, 8}, 1e-2, 0.05);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].reference_n == 16);
  REQUIRE(reports[0].rows.size() == 2);
  CHECK_FALSE(reports[0].rows[0].order_rho.has_value());
  CHECK(reports[0].rows[1].order_u.has_value());
  CHECK(reports[0].rows[1].err_u < reports[0].rows[0].err_u);
  CHECK(reports[0].rows[1].mass_drift <= 1e-12);
}

TEST_CASE("command line") {
  const fs::path dir = scratch("cli");
  CHECK(cli({"run", "--scenario", "taylor-green", "--nx", "16", "--ny", "16", "--degree", "2", "--dt", "1e-3",
             "--t-final", "0.1", "--out-dir", (dir / "tg").string()}) == 0);
  CHECK(line_count(dir / "tg" / "invariants.csv") == 102);
  CHECK(fs::exists(dir / "tg" / "final.vtk"));

  CHECK(cli({"run", "--scenario", "shear-full", "--nx", "8", "--ny", "8", "--dt", "1e-3", "--reverse-at", "0.01",
             "--snapshot-every", "5", "--out-dir", (dir / "rev").string()}) == 0);
  const auto rows = read_csv((dir / "rev" / "invariants.csv").string());
  CHECK(rows.size() == 21);
  CHECK(std::abs(rows.back().time) < 1e-15);
  CHECK(fs::exists(dir / "rev" / "snapshot_000020.vtk"));

  {
    std::ofstream cfg(dir / "c.toml");
    cfg << "[run]\nscenario = \"alfven\"\nnx = 8\nny = 4\ndt = 0.01\nt-final = 0.02\nout-dir = \""
        << (dir / "cfg").string() << "\"\n";
  }
  CHECK(cli({"--config", (dir / "c.toml").string(), "run", "--t-final", "0.05"}) == 0);
  CHECK(line_count(dir / "cfg" / "invariants.csv") == 7);

  CHECK(cli({"run", "--scenario", "no-such-flow"}) == 2);
  CHECK(cli({"run", "--scenario", "taylor-green", "--bogus"}) == 2);
  CHECK(cli({"frobnicate"}) == 2);
  CHECK(cli({}) == 2);
  CHECK(cli({"run", "--scenario", "taylor-green", "--dt", "0.3", "--t-final", "1.0"}) == 2);
}
