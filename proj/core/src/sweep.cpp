#include "oqcar/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <thread>

#include "oqcar/errors.hpp"

namespace oqcar {

std::vector<double> belief_axis(double step) {
  if (!(step > 0.0 && step <= 0.25)) throw std::invalid_argument("grid step must lie in (0, 0.25]");
  std::vector<double> axis;
  for (int i = 0;; ++i) {
    const double v = i * step;
    if (v > 1.0 + 0.5 * step) break;
    axis.push_back(std::min(v, 1.0));
    if (axis.back() == 1.0) break;
  }
  if (axis.back() != 1.0) axis.push_back(1.0);
  return axis;
}

namespace {

int worker_count(const SweepConfig& config) {
  if (config.threads > 0) return config.threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(row) for every row index, split across workers. Each row writes
// only its own slots, so scheduling cannot affect the result. The first
// exception thrown by a worker is rethrown here.
template <typename Fn>
void for_each_row(size_t rows, int workers, Fn fn) {
  if (workers <= 1 || rows < 2) {
    for (size_t r = 0; r < rows; ++r) fn(r);
    return;
  }
  std::mutex error_mutex;
  std::exception_ptr error;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (size_t r = static_cast<size_t>(w); r < rows; r += workers) fn(r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

void require_positive_alpha(const SweepConfig& config) {
  if (config.alpha == 0.0)
    throw ConfigError("alpha", "alpha must be positive: steady-state responses are undefined at 0");
}

}  // namespace

PhaseGrid run_pure_sweep(const SweepConfig& config) {
  config.validate();
  if (config.mode != SweepMode::Pure && config.mode != SweepMode::Agnostic)
    throw ConfigError("mode", "run_pure_sweep requires mode pure or agnostic");
  require_positive_alpha(config);

  PhaseGrid grid;
  grid.mode = config.mode;
  grid.alpha = config.alpha;
  grid.lambda = config.lambda;
  grid.p_axis = belief_axis(config.grid_step);
  grid.q_axis = grid.p_axis;
  grid.pure_cells.resize(grid.p_axis.size() * grid.q_axis.size());

  const CognitionParams params{config.alpha, config.lambda, 0.0};
  const bool agnostic = config.mode == SweepMode::Agnostic;

  for_each_row(grid.p_axis.size(), worker_count(config), [&](size_t pi) {
    const DriverBelief belief{grid.p_axis[pi]};
    for (size_t qi = 0; qi < grid.q_axis.size(); ++qi) {
      const double q = grid.q_axis[qi];
      PureCell& cell = grid.pure_cells[pi * grid.q_axis.size() + qi];
      if (agnostic) {
        const CarAction car = agnostic_response_car(q);
        const DriverResponse driver = oq_pure(car, params, belief, config.utilities);
        cell.eqs.profiles.push_back(
            PureProfile{car, driver.action, driver.pr_continue, driver.degenerate, false});
      } else {
        cell.eqs = pure_equilibria(params, belief, CarBelief{q}, config.utilities);
      }
    }
  });
  return grid;
}

PhaseGrid run_mixed_sweep(const SweepConfig& config) {
  config.validate();
  if (config.mode != SweepMode::Mixed) throw ConfigError("mode", "run_mixed_sweep requires mode mixed");
  require_positive_alpha(config);

  PhaseGrid grid;
  grid.mode = SweepMode::Mixed;
  grid.alpha = config.alpha;
  grid.lambda = config.lambda;
  grid.p_axis = belief_axis(config.grid_step);
  grid.q_axis = grid.p_axis;
  grid.mixed_cells.resize(grid.p_axis.size() * grid.q_axis.size());

  const CognitionParams params{config.alpha, config.lambda, 0.0};

  for_each_row(grid.p_axis.size(), worker_count(config), [&](size_t pi) {
    const DriverBelief belief{grid.p_axis[pi]};
    for (size_t qi = 0; qi < grid.q_axis.size(); ++qi) {
      MixedCell& cell = grid.mixed_cells[pi * grid.q_axis.size() + qi];
      cell.pc_star = mixed_pc_star(grid.q_axis[qi], config.utilities);
      if (cell.pc_star)
        cell.eq = mixed_equilibrium(params, belief, CarBelief{grid.q_axis[qi]}, config.utilities);
    }
  });
  return grid;
}

namespace {

std::set<CarAction> car_set(const PureCell& cell) {
  std::set<CarAction> s;
  for (const PureProfile& p : cell.eqs.profiles) s.insert(p.car);
  return s;
}

}  // namespace

Summary summarize(const PhaseGrid& grid) {
  if (grid.mode != SweepMode::Pure && grid.mode != SweepMode::Agnostic)
    throw std::invalid_argument("summarize requires a pure or agnostic grid");
  if (grid.pure_cells.empty()) throw std::invalid_argument("summarize requires a non-empty grid");

  Summary s;
  s.p_count = grid.p_axis.size();
  s.q_count = grid.q_axis.size();

  size_t stop_cells = 0, alert_cells = 0, alert_stop_cells = 0;
  size_t empty = 0, nc = 0, ns = 0, ac = 0, as = 0, multi = 0;
  for (const PureCell& cell : grid.pure_cells) {
    const auto& profiles = cell.eqs.profiles;
    if (cell.eqs.any_driver(DriverAction::Stop)) ++stop_cells;
    if (cell.eqs.any_car(CarAction::Alert)) {
      ++alert_cells;
      for (const PureProfile& p : profiles)
        if (p.car == CarAction::Alert && p.driver == DriverAction::Stop) {
          ++alert_stop_cells;
          break;
        }
    }
    if (profiles.empty()) ++empty;
    else if (profiles.size() > 1) ++multi;
    else if (profiles[0].car == CarAction::NoAlert)
      (profiles[0].driver == DriverAction::Continue ? nc : ns)++;
    else
      (profiles[0].driver == DriverAction::Continue ? ac : as)++;
  }
  const double total = static_cast<double>(grid.pure_cells.size());
  s.stop_fraction_overall = stop_cells / total;
  s.stop_fraction_given_alert = alert_cells == 0 ? 0.0 : static_cast<double>(alert_stop_cells) / alert_cells;
  s.fraction_empty = empty / total;
  s.fraction_no_alert_continue = nc / total;
  s.fraction_no_alert_stop = ns / total;
  s.fraction_alert_continue = ac / total;
  s.fraction_alert_stop = as / total;
  s.fraction_two_equilibria = multi / total;

  s.border_q.assign(s.p_count, std::numeric_limits<double>::quiet_NaN());
  for (size_t pi = 0; pi < s.p_count; ++pi) {
    std::set<CarAction> prev;
    for (size_t qi = 0; qi < s.q_count; ++qi) {
      const std::set<CarAction> cur = car_set(grid.pure_at(pi, qi));
      if (cur.empty()) continue;
      if (!prev.empty() && cur != prev) {
        s.border_q[pi] = grid.q_axis[qi];
        break;
      }
      prev = cur;
    }
  }
  return s;
}

namespace {

std::string fmt_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string cell_flags(const PureCell& cell) {
  bool deg = false, tie = false;
  for (const PureProfile& p : cell.eqs.profiles) {
    deg = deg || p.degenerate;
    tie = tie || p.payoff_tie;
  }
  std::string f;
  if (deg) f += "deg";
  if (tie) f += f.empty() ? "tie" : "|tie";
  return f;
}

}  // namespace

std::string render_csv(const PhaseGrid& grid) {
  std::string out;
  if (grid.mode == SweepMode::Mixed) {
    out = "p,q,pc_star,pa_star,exists,flags\n";
    for (size_t pi = 0; pi < grid.p_axis.size(); ++pi)
      for (size_t qi = 0; qi < grid.q_axis.size(); ++qi) {
        const MixedCell& cell = grid.mixed_at(pi, qi);
        out += fmt_number(grid.p_axis[pi]);
        out += ',';
        out += fmt_number(grid.q_axis[qi]);
        out += ',';
        if (cell.pc_star) out += fmt_number(*cell.pc_star);
        out += ',';
        if (cell.eq) out += fmt_number(cell.eq->p_alert_star);
        out += ',';
        out += cell.eq ? '1' : '0';
        out += ',';
        if (cell.eq && cell.eq->any_p_alert) out += "any_pa";
        out += '\n';
      }
    return out;
  }

  out = "p,q,eq_count,eq1_car,eq1_driver,eq2_car,eq2_driver,flags\n";
  for (size_t pi = 0; pi < grid.p_axis.size(); ++pi)
    for (size_t qi = 0; qi < grid.q_axis.size(); ++qi) {
      const PureCell& cell = grid.pure_at(pi, qi);
      const auto& profiles = cell.eqs.profiles;
      out += fmt_number(grid.p_axis[pi]);
      out += ',';
      out += fmt_number(grid.q_axis[qi]);
      out += ',';
      out += std::to_string(profiles.size());
      for (size_t k = 0; k < 2; ++k) {
        out += ',';
        if (k < profiles.size()) out += to_letter(profiles[k].car);
        out += ',';
        if (k < profiles.size()) out += to_letter(profiles[k].driver);
      }
      out += ',';
      out += cell_flags(cell);
      out += '\n';
    }
  return out;
}

namespace {

struct Rgb {
  unsigned char r, g, b;
};

// fixed color table: white = no equilibrium, green = (N,C), blue = (N,S),
// orange = (A,C), firebrick = (A,S), purple = two equilibria
Rgb pure_color(const PureCell& cell) {
  const auto& profiles = cell.eqs.profiles;
  if (profiles.empty()) return {255, 255, 255};
  if (profiles.size() > 1) return {147, 112, 219};
  const PureProfile& p = profiles[0];
  if (p.car == CarAction::NoAlert)
    return p.driver == DriverAction::Continue ? Rgb{34, 139, 34} : Rgb{65, 105, 225};
  return p.driver == DriverAction::Continue ? Rgb{255, 165, 0} : Rgb{178, 34, 34};
}

Rgb mixed_color(const MixedCell& cell) {
  if (!cell.eq) return {255, 255, 255};
  const double pa = cell.eq->p_alert_star;
  const int r = static_cast<int>(std::lround(255.0 * pa));
  const int b = static_cast<int>(std::lround(255.0 * (1.0 - pa)));
  return {static_cast<unsigned char>(r), 40, static_cast<unsigned char>(b)};
}

}  // namespace

std::string render_ppm(const PhaseGrid& grid) {
  const size_t w = grid.q_axis.size();
  const size_t h = grid.p_axis.size();
  std::string out = "P6\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
  out.reserve(out.size() + 3 * w * h);
  for (size_t row = 0; row < h; ++row) {
    const size_t pi = h - 1 - row;  // top row holds the largest p
    for (size_t qi = 0; qi < w; ++qi) {
      const Rgb c = grid.mode == SweepMode::Mixed ? mixed_color(grid.mixed_at(pi, qi))
                                                  : pure_color(grid.pure_at(pi, qi));
      out += static_cast<char>(c.r);
      out += static_cast<char>(c.g);
      out += static_cast<char>(c.b);
    }
  }
  return out;
}

std::string render_summary(const PhaseGrid& grid, const Summary& summary) {
  std::string out;
  out += "mode: " + std::string(to_string(grid.mode)) + "\n";
  out += "grid: " + std::to_string(summary.p_count) + " x " + std::to_string(summary.q_count) + "\n";
  out += "alpha: " + fmt_number(grid.alpha) + "\n";
  out += "lambda: " + fmt_number(grid.lambda) + "\n";
  out += "stop_fraction_overall: " + fmt_number(summary.stop_fraction_overall) + "\n";
  out += "stop_fraction_given_alert: " + fmt_number(summary.stop_fraction_given_alert) + "\n";
  out += "area_fraction_no_equilibrium: " + fmt_number(summary.fraction_empty) + "\n";
  out += "area_fraction_N_C: " + fmt_number(summary.fraction_no_alert_continue) + "\n";
  out += "area_fraction_N_S: " + fmt_number(summary.fraction_no_alert_stop) + "\n";
  out += "area_fraction_A_C: " + fmt_number(summary.fraction_alert_continue) + "\n";
  out += "area_fraction_A_S: " + fmt_number(summary.fraction_alert_stop) + "\n";
  out += "area_fraction_two_equilibria: " + fmt_number(summary.fraction_two_equilibria) + "\n";
  out += "border_q_by_row:\n";
  for (size_t pi = 0; pi < summary.p_count; ++pi) {
    out += "  p=" + fmt_number(grid.p_axis[pi]) + " border=";
    out += std::isnan(summary.border_q[pi]) ? "none" : fmt_number(summary.border_q[pi]);
    out += '\n';
  }
  return out;
}

std::string render_mixed_summary(const PhaseGrid& grid) {
  size_t cells = 0, feasible_pc = 0;
  std::set<size_t> rows_with;
  for (size_t pi = 0; pi < grid.p_axis.size(); ++pi)
    for (size_t qi = 0; qi < grid.q_axis.size(); ++qi) {
      const MixedCell& cell = grid.mixed_at(pi, qi);
      if (cell.pc_star) ++feasible_pc;
      if (cell.eq) {
        ++cells;
        rows_with.insert(pi);
      }
    }
  const double total = static_cast<double>(grid.mixed_cells.size());
  std::string out;
  out += "mode: mixed\n";
  out += "grid: " + std::to_string(grid.p_axis.size()) + " x " + std::to_string(grid.q_axis.size()) + "\n";
  out += "alpha: " + fmt_number(grid.alpha) + "\n";
  out += "lambda: " + fmt_number(grid.lambda) + "\n";
  out += "cells_with_feasible_pc_star: " + std::to_string(feasible_pc) + "\n";
  out += "cells_with_equilibrium: " + std::to_string(cells) + " (" + fmt_number(cells / total) + ")\n";
  out += "p_rows_with_equilibrium: " + std::to_string(rows_with.size()) + " / " +
         std::to_string(grid.p_axis.size()) + "\n";
  return out;
}

namespace {

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace

std::vector<std::string> emit_outputs(const PhaseGrid& grid, const SweepConfig& config) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + config.output_dir + "': " + ec.message());

  const std::string stem = std::string(to_string(grid.mode)) + "_sweep";
  std::vector<std::string> written;
  const bool csv = config.format != OutputFormat::Ppm;
  const bool ppm = config.format != OutputFormat::Csv;

  if (csv) {
    const std::string path = config.output_dir + "/" + stem + ".csv";
    write_file(path, render_csv(grid));
    written.push_back(path);
  }
  if (ppm) {
    const std::string path = config.output_dir + "/" + stem + ".ppm";
    write_file(path, render_ppm(grid));
    written.push_back(path);
  }
  const std::string summary_path = config.output_dir + "/summary.txt";
  if (grid.mode == SweepMode::Mixed) {
    write_file(summary_path, render_mixed_summary(grid));
  } else {
    write_file(summary_path, render_summary(grid, summarize(grid)));
  }
  written.push_back(summary_path);
  return written;
}

}  // namespace oqcar
