#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "oqcar/errors.hpp"
#include "oqcar/sweep.hpp"
#include "test_support.hpp"

using namespace oqcar;
using testsupport::default_config;
using testsupport::TempDir;

namespace {

size_t axis_index(const std::vector<double>& axis, double v) {
  for (size_t i = 0; i < axis.size(); ++i)
    if (std::abs(axis[i] - v) < 1e-9) return i;
  REQUIRE(false);
  return 0;
}

}  // namespace

TEST_CASE("belief axis spans [0,1] inclusive") {
  const auto fine = belief_axis(0.02);
  CHECK(fine.size() == 51);
  CHECK(fine.front() == 0.0);
  CHECK(fine.back() == 1.0);

  const auto coarse = belief_axis(0.25);
  CHECK(coarse.size() == 5);
  CHECK(coarse.back() == 1.0);
  CHECK_THROWS_AS(belief_axis(0.3), std::invalid_argument);
}

TEST_CASE("pure sweep reproduces the corner equilibria") {
  SweepConfig cfg = default_config();
  const PhaseGrid grid = run_pure_sweep(cfg);
  CHECK(grid.p_axis.size() == 51);

  const size_t hi = axis_index(grid.p_axis, 0.9), lo = axis_index(grid.p_axis, 0.1);
  CHECK(grid.pure_at(hi, hi).eqs.contains(CarAction::NoAlert, DriverAction::Continue));
  CHECK(grid.pure_at(hi, hi).eqs.profiles.size() == 1);
  CHECK(grid.pure_at(lo, lo).eqs.contains(CarAction::Alert, DriverAction::Stop));
}

TEST_CASE("sweep output is independent of the worker count and rerun-stable") {
  SweepConfig cfg = default_config();
  cfg.grid_step = 0.05;
  cfg.threads = 1;
  const std::string csv1 = render_csv(run_pure_sweep(cfg));
  cfg.threads = 4;
  const std::string csv4 = render_csv(run_pure_sweep(cfg));
  CHECK(csv1 == csv4);
  CHECK(csv1 == render_csv(run_pure_sweep(cfg)));

  cfg.mode = SweepMode::Mixed;
  const std::string m1 = render_csv(run_mixed_sweep(cfg));
  cfg.threads = 1;
  CHECK(m1 == render_csv(run_mixed_sweep(cfg)));
}

TEST_CASE("agnostic sweep flips the car exactly at q = 0.5") {
  SweepConfig cfg = default_config();
  cfg.mode = SweepMode::Agnostic;
  const PhaseGrid grid = run_pure_sweep(cfg);
  const Summary summary = summarize(grid);
  for (double border : summary.border_q) CHECK(border == 0.5);
  CHECK(summary.fraction_empty == 0.0);
  CHECK(summary.fraction_two_equilibria == 0.0);
}

TEST_CASE("two-equilibrium cells appear at moderate discrimination") {
  SweepConfig cfg = default_config();
  cfg.alpha = 0.8;
  cfg.lambda = 3.0;
  const Summary summary = summarize(run_pure_sweep(cfg));
  CHECK(summary.fraction_two_equilibria > 0.0);
}

TEST_CASE("summary fractions partition the grid and match frozen counts") {
  SweepConfig cfg = default_config();
  cfg.alpha = 0.8;
  cfg.lambda = 1.0;
  const Summary s = summarize(run_pure_sweep(cfg));
  const double sum = s.fraction_empty + s.fraction_no_alert_continue + s.fraction_no_alert_stop +
                     s.fraction_alert_continue + s.fraction_alert_stop + s.fraction_two_equilibria;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.stop_fraction_overall == doctest::Approx(1686.0 / 2601.0).epsilon(1e-12));
  CHECK(s.stop_fraction_given_alert == doctest::Approx(1190.0 / 1649.0).epsilon(1e-12));
  CHECK(s.stop_fraction_given_alert >= s.stop_fraction_overall);
}

TEST_CASE("mixed band: present at moderate discrimination, hairline at high") {
  SweepConfig cfg = default_config();
  cfg.mode = SweepMode::Mixed;
  cfg.alpha = 0.8;

  auto existing_cells = [](const PhaseGrid& grid) {
    size_t n = 0;
    for (const MixedCell& cell : grid.mixed_cells) n += cell.eq.has_value();
    return n;
  };

  cfg.lambda = 1.0;
  const size_t at_one = existing_cells(run_mixed_sweep(cfg));
  CHECK(at_one > 0);

  // a sharply discriminating driver barely responds to the alert
  // probability, so the band thins below the grid resolution
  cfg.lambda = 10.0;
  CHECK(existing_cells(run_mixed_sweep(cfg)) <= at_one);
}

TEST_CASE("csv layout: header, row count, field shapes") {
  SweepConfig cfg = default_config();
  cfg.grid_step = 0.25;
  const std::string csv = render_csv(run_pure_sweep(cfg));
  CHECK(csv.rfind("p,q,eq_count,eq1_car,eq1_driver,eq2_car,eq2_driver,flags\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 26);  // header + 5x5 cells

  // hand-built 2x2 grid gives exactly four data rows
  PhaseGrid tiny;
  tiny.mode = SweepMode::Pure;
  tiny.p_axis = {0.0, 1.0};
  tiny.q_axis = {0.0, 1.0};
  tiny.pure_cells.resize(4);
  tiny.pure_cells[1].eqs.profiles.push_back(
      PureProfile{CarAction::NoAlert, DriverAction::Stop, 0.4, false, false});
  const std::string tiny_csv = render_csv(tiny);
  CHECK(std::count(tiny_csv.begin(), tiny_csv.end(), '\n') == 5);
  CHECK(tiny_csv.find("0,1,1,N,S,,,\n") != std::string::npos);
  CHECK(tiny_csv.find("0,0,0,,,,,\n") != std::string::npos);
}

TEST_CASE("mixed csv marks infeasible and absent cells") {
  SweepConfig cfg = default_config();
  cfg.mode = SweepMode::Mixed;
  cfg.alpha = 0.8;
  cfg.lambda = 1.0;
  cfg.grid_step = 0.02;
  const PhaseGrid grid = run_mixed_sweep(cfg);
  const std::string csv = render_csv(grid);
  CHECK(csv.rfind("p,q,pc_star,pa_star,exists,flags\n", 0) == 0);
  // q = 0 is infeasible for the car: empty pc and pa fields
  CHECK(csv.find("0,0,,,0,\n") != std::string::npos);
  // the (p=0.64, q=0.6) cell carries a full equilibrium
  const size_t pi = axis_index(grid.p_axis, 0.64), qi = axis_index(grid.q_axis, 0.6);
  REQUIRE(grid.mixed_at(pi, qi).eq.has_value());
  CHECK(csv.find("0.64,0.6,0.5,0.367572,1,\n") != std::string::npos);
}

TEST_CASE("heatmap raster has the fixed header and one pixel per cell") {
  SweepConfig cfg = default_config();
  cfg.grid_step = 0.25;
  const std::string ppm = render_ppm(run_pure_sweep(cfg));
  CHECK(ppm.rfind("P6\n5 5\n255\n", 0) == 0);
  CHECK(ppm.size() == 11 + 3 * 25);
}

TEST_CASE("emit_outputs writes deterministic files per the format flag") {
  SweepConfig cfg = default_config();
  cfg.grid_step = 0.1;
  TempDir dir;
  cfg.output_dir = dir.path() + "/run";
  const PhaseGrid grid = run_pure_sweep(cfg);
  const auto written = emit_outputs(grid, cfg);
  REQUIRE(written.size() == 3);
  const std::string first = testsupport::read_file(written[0]);
  CHECK(!first.empty());
  emit_outputs(grid, cfg);
  CHECK(testsupport::read_file(written[0]) == first);

  cfg.format = OutputFormat::Csv;
  CHECK(emit_outputs(grid, cfg).size() == 2);

  cfg.output_dir = "/proc/version/cannot_exist";
  CHECK_THROWS_AS(emit_outputs(grid, cfg), IoError);
}

TEST_CASE("config parsing: defaults, overrides, field-precise errors") {
  TempDir dir;
  const std::string path = testsupport::write_default_config(
      dir.path(), "alpha = 0.8\nlambda = 3\ngrid_step = 0.1\nmode = mixed\nformat = csv\n");
  const SweepConfig cfg = load_config(path);
  CHECK(cfg.alpha == 0.8);
  CHECK(cfg.lambda == 3.0);
  CHECK(cfg.mode == SweepMode::Mixed);
  CHECK(cfg.format == OutputFormat::Csv);
  CHECK(cfg.utilities.d2d == 85.0);

  // defaults when only utilities are given
  const SweepConfig bare = load_config(testsupport::write_default_config(dir.path()));
  CHECK(bare.alpha == 0.2);
  CHECK(bare.lambda == 10.0);
  CHECK(bare.grid_step == 0.02);
  CHECK(bare.mode == SweepMode::Pure);
}

TEST_CASE("config errors name the field") {
  TempDir dir;

  {  // missing utility
    std::ofstream out(dir.path() + "/missing.cfg");
    out << "a1s = 85\n";
  }
  try {
    load_config(dir.path() + "/missing.cfg");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "b1s");
  }

  const std::string bad_value =
      testsupport::write_default_config(dir.path(), "grid_step = 0.5\n");
  CHECK_THROWS_AS(load_config(bad_value), ConfigError);

  const std::string unknown = testsupport::write_default_config(dir.path(), "grid_steps = 0.1\n");
  try {
    load_config(unknown);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "grid_steps");
  }

  // non-positive driver utility
  {
    std::ofstream out(dir.path() + "/neg.cfg");
    out << "a1s = 85\nb1s = 75\nc1s = 40\nd1s = 50\n"
           "a1d = 25\nb1d = 30\nc1d = 75\nd1d = 85\n"
           "a2s = -85\nb2s = 50\nc2s = 85\nd2s = 50\n"
           "a2d = 25\nb2d = 60\nc2d = 25\nd2d = 85\n";
  }
  try {
    load_config(dir.path() + "/neg.cfg");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "a2s");
  }

  CHECK_THROWS_AS(load_config(dir.path() + "/does_not_exist.cfg"), ConfigError);
}

TEST_CASE("steady-state sweeps refuse alpha = 0 up front") {
  SweepConfig cfg = default_config();
  cfg.alpha = 0.0;
  CHECK_THROWS_AS(run_pure_sweep(cfg), ConfigError);
  cfg.mode = SweepMode::Mixed;
  CHECK_THROWS_AS(run_mixed_sweep(cfg), ConfigError);
}
