#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oqcar/equilibrium.hpp"

namespace oqcar {

enum class SweepMode { Pure, Mixed, Agnostic, Evolve, Validate };
enum class OutputFormat { Csv, Ppm, Both };

const char* to_string(SweepMode mode);
const char* to_string(OutputFormat format);

struct SweepConfig {
  UtilityTable utilities{};
  double alpha = 0.2;
  double lambda = 10.0;
  double grid_step = 0.02;
  SweepMode mode = SweepMode::Pure;
  std::string output_dir = "out";
  OutputFormat format = OutputFormat::Both;
  int threads = 0;  // 0 = pick from hardware

  void validate() const;  // throws ConfigError naming the offending field
};

// Parses a key = value document (utf-8, '#' comments). All sixteen utility
// fields are required; cognition and sweep fields fall back to defaults.
// Unknown keys are errors.
SweepConfig load_config(const std::string& path);

// 0, step, 2*step, ... capped at exactly 1.0.
std::vector<double> belief_axis(double step);

struct PureCell {
  PureEquilibriumSet eqs;
};

struct MixedCell {
  std::optional<double> pc_star;
  std::optional<MixedEquilibrium> eq;
};

// Row-major grid over the (p, q) belief plane; p indexes rows.
struct PhaseGrid {
  SweepMode mode = SweepMode::Pure;
  double alpha = 0.0;
  double lambda = 0.0;
  std::vector<double> p_axis;
  std::vector<double> q_axis;
  std::vector<PureCell> pure_cells;
  std::vector<MixedCell> mixed_cells;

  const PureCell& pure_at(size_t pi, size_t qi) const { return pure_cells[pi * q_axis.size() + qi]; }
  const MixedCell& mixed_at(size_t pi, size_t qi) const { return mixed_cells[pi * q_axis.size() + qi]; }
};

// Evaluates the equilibrium set (or the agnostic benchmark profile) at every
// belief pair. Cells are independent; rows may be computed concurrently and
// the result does not depend on the worker count.
PhaseGrid run_pure_sweep(const SweepConfig& config);

// Car-indifference probability per q, alert probability per (p, q) when the
// steady response can reach it.
PhaseGrid run_mixed_sweep(const SweepConfig& config);

struct Summary {
  size_t p_count = 0;
  size_t q_count = 0;
  double stop_fraction_overall = 0.0;      // cells with a stopping equilibrium
  double stop_fraction_given_alert = 0.0;  // ... among cells with an alerting one
  double fraction_empty = 0.0;
  double fraction_no_alert_continue = 0.0;
  double fraction_no_alert_stop = 0.0;
  double fraction_alert_continue = 0.0;
  double fraction_alert_stop = 0.0;
  double fraction_two_equilibria = 0.0;
  // Per p row: first q at which the cells' car-action set changes; NaN when
  // the row never flips.
  std::vector<double> border_q;
};

// Requires a pure or agnostic grid.
Summary summarize(const PhaseGrid& grid);

std::string render_csv(const PhaseGrid& grid);
std::string render_ppm(const PhaseGrid& grid);
std::string render_summary(const PhaseGrid& grid, const Summary& summary);
std::string render_mixed_summary(const PhaseGrid& grid);

// Writes csv/ppm/summary per the configured format into config.output_dir
// and returns the paths written.
std::vector<std::string> emit_outputs(const PhaseGrid& grid, const SweepConfig& config);

}  // namespace oqcar
