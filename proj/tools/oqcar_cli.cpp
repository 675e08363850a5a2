// Command-line front end: belief-plane sweeps, single-point equilibria,
// state evolution traces, and the cross-oracle validation suite.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "oqcar/cognition.hpp"
#include "oqcar/errors.hpp"
#include "oqcar/oqs_engine.hpp"
#include "oqcar/sweep.hpp"
#include "oqcar/validate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct CommonFlags {
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<double> grid_step;
  std::optional<double> alpha;
  std::optional<double> lambda;
  std::optional<std::string> format;
  std::optional<int> threads;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool config_required = true) {
  auto* opt = cmd->add_option("--config", flags.config_path, "path to the key=value config file");
  if (config_required) opt->required();
  cmd->add_option("--out", flags.out_dir, "output directory (overrides config)");
  cmd->add_option("--grid-step", flags.grid_step, "belief grid step (overrides config)");
  cmd->add_option("--alpha", flags.alpha, "dissipation weight (overrides config)");
  cmd->add_option("--lambda", flags.lambda, "utility discrimination (overrides config)");
  cmd->add_option("--format", flags.format, "csv|ppm|both (overrides config)");
  cmd->add_option("--threads", flags.threads, "worker threads (0 = auto)");
}

oqcar::SweepConfig resolve(const CommonFlags& flags, oqcar::SweepMode mode) {
  oqcar::SweepConfig cfg = oqcar::load_config(flags.config_path);
  cfg.mode = mode;
  if (flags.out_dir) cfg.output_dir = *flags.out_dir;
  if (flags.grid_step) cfg.grid_step = *flags.grid_step;
  if (flags.alpha) cfg.alpha = *flags.alpha;
  if (flags.lambda) cfg.lambda = *flags.lambda;
  if (flags.threads) cfg.threads = *flags.threads;
  if (flags.format) {
    if (*flags.format == "csv") cfg.format = oqcar::OutputFormat::Csv;
    else if (*flags.format == "ppm") cfg.format = oqcar::OutputFormat::Ppm;
    else if (*flags.format == "both") cfg.format = oqcar::OutputFormat::Both;
    else throw oqcar::ConfigError("format", "format must be csv|ppm|both");
  }
  cfg.validate();
  return cfg;
}

int run_sweep(const CommonFlags& flags, oqcar::SweepMode mode) {
  const oqcar::SweepConfig cfg = resolve(flags, mode);
  const oqcar::PhaseGrid grid =
      mode == oqcar::SweepMode::Mixed ? oqcar::run_mixed_sweep(cfg) : oqcar::run_pure_sweep(cfg);
  for (const std::string& path : oqcar::emit_outputs(grid, cfg)) std::cout << "wrote " << path << "\n";
  return kExitOk;
}

int run_equilibrium(const CommonFlags& flags, double p, double q) {
  const oqcar::SweepConfig cfg = resolve(flags, oqcar::SweepMode::Pure);
  const oqcar::CognitionParams params{cfg.alpha, cfg.lambda, 0.0};
  const oqcar::DriverBelief belief{p};
  const oqcar::CarBelief car_belief{q};

  const oqcar::PureEquilibriumSet pure =
      oqcar::pure_equilibria(params, belief, car_belief, cfg.utilities);
  std::cout << "pure equilibria (" << pure.profiles.size() << "):\n";
  for (const oqcar::PureProfile& prof : pure.profiles) {
    std::printf("  (%c,%c) pr_continue=%.6g%s%s\n", oqcar::to_letter(prof.car),
                oqcar::to_letter(prof.driver), prof.pr_continue,
                prof.degenerate ? " [degenerate]" : "", prof.payoff_tie ? " [payoff tie]" : "");
  }

  const auto mixed = oqcar::mixed_equilibrium(params, belief, car_belief, cfg.utilities);
  if (mixed) {
    std::printf("mixed equilibrium: p_A*=%.6g p_C*=%.6g (residuals %.2e, %.2e)%s\n",
                mixed->p_alert_star, mixed->p_continue_star, mixed->residual_indifference,
                mixed->residual_response, mixed->any_p_alert ? " [any p_A]" : "");
  } else {
    std::cout << "mixed equilibrium: none\n";
  }
  return kExitOk;
}

int run_evolve(const CommonFlags& flags, double p, const std::string& car_action,
               std::optional<double> p_alert, double t_max, double dt) {
  const oqcar::SweepConfig cfg = resolve(flags, oqcar::SweepMode::Evolve);
  if (!(t_max >= 0.0) || !(dt > 0.0)) throw oqcar::ConfigError("t-max", "need t-max >= 0 and dt > 0");

  const double pa = p_alert ? *p_alert : (car_action == "A" ? 1.0 : 0.0);
  const oqcar::CognitionParams params{cfg.alpha, cfg.lambda, 0.0};
  const oqcar::LuceRates rates = oqcar::build_luce_rates(cfg.utilities, cfg.lambda);
  const oqcar::ComplexMatrix cog = oqcar::build_cognition_matrix(rates);
  const oqcar::GeneratorMatrix gen = oqcar::build_generator(cfg.alpha, cog);
  const oqcar::DensityState rho0 = oqcar::initial_state_mixed(oqcar::DriverBelief{p}, pa);

  std::string csv = "t,pr_continue,pr_continue_closed,delta,trace_dev,hermiticity_dev\n";
  const int steps = static_cast<int>(t_max / dt + 0.5);
  for (int k = 0; k <= steps; ++k) {
    const double t = k * dt;
    const oqcar::DensityState rho = oqcar::evolve(gen, rho0, t);
    const double pr = oqcar::pr_continue_from_state(rho);
    const double closed = oqcar::pr_continue_closed_form(params, rates, p, pa, t);
    char line[192];
    std::snprintf(line, sizeof line, "%.6g,%.6g,%.6g,%.3e,%.3e,%.3e\n", t, pr, closed,
                  std::abs(pr - closed), std::abs(rho.trace_real() - 1.0), rho.hermiticity_defect());
    csv += line;
  }

  std::filesystem::create_directories(cfg.output_dir);
  const std::string path = cfg.output_dir + "/evolve.csv";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw oqcar::IoError("cannot open '" + path + "' for writing");
  out << csv;
  if (!out) throw oqcar::IoError("failed writing '" + path + "'");
  std::cout << "wrote " << path << "\n";
  if (cfg.alpha > 0.0)
    std::printf("steady-state pr_continue = %.6g\n",
                oqcar::steady_state_pr_continue(params, rates, p, pa));
  return kExitOk;
}

bool is_utility_field(const std::string& field) {
  static const char* names[] = {"a1s", "b1s", "c1s", "d1s", "a1d", "b1d", "c1d", "d1d",
                                "a2s", "b2s", "c2s", "d2s", "a2d", "b2d", "c2d", "d2d"};
  for (const char* n : names)
    if (field == n) return true;
  return false;
}

int run_validation(const CommonFlags& flags, bool inject_fault) {
  oqcar::ValidationReport report;
  try {
    const oqcar::SweepConfig cfg = resolve(flags, oqcar::SweepMode::Validate);
    report = oqcar::run_validate(cfg, inject_fault);
  } catch (const oqcar::ConfigError& e) {
    // a bad payoff value is a model defect, not a malformed document
    if (!is_utility_field(e.field())) throw;
    report.checks.push_back({"utility-table", false, 0.0, std::string("field ") + e.field() + ": " + e.what()});
  }
  oqcar::print_report(report, std::cout);
  return report.all_passed() ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"open-quantum driver/car interaction game solver"};
  app.require_subcommand(1);

  CommonFlags flags;
  bool agnostic = false;
  double p = 0.5, q = 0.5, t_max = 50.0, dt = 0.5;
  std::string car_action = "N";
  std::optional<double> p_alert;
  bool inject_fault = false;

  CLI::App* pure = app.add_subcommand("pure-sweep", "pure-strategy equilibria over the belief plane");
  add_common(pure, flags);
  pure->add_flag("--agnostic", agnostic, "replace the car by the prior-threshold benchmark");

  CLI::App* mixed = app.add_subcommand("mixed-sweep", "mixed-strategy equilibria over the belief plane");
  add_common(mixed, flags);

  CLI::App* evolve_cmd = app.add_subcommand("evolve", "time evolution trace at one belief point");
  add_common(evolve_cmd, flags);
  evolve_cmd->add_option("--p", p, "driver prior that the road is safe")->required();
  evolve_cmd->add_option("--car-action", car_action, "N or A")->check(CLI::IsMember({"N", "A"}));
  evolve_cmd->add_option("--pa", p_alert, "alert probability (overrides --car-action)");
  evolve_cmd->add_option("--t-max", t_max, "final time");
  evolve_cmd->add_option("--dt", dt, "output stride");

  CLI::App* eq = app.add_subcommand("equilibrium", "pure and mixed equilibria at one belief point");
  add_common(eq, flags);
  eq->add_option("--p", p, "driver prior that the road is safe")->required();
  eq->add_option("--q", q, "car prior that the road is safe")->required();

  CLI::App* validate_cmd = app.add_subcommand("validate", "run the cross-oracle self checks");
  add_common(validate_cmd, flags);
  validate_cmd->add_flag("--inject-fault", inject_fault,
                         "perturb one generator entry to exercise the failure path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (pure->parsed()) return run_sweep(flags, agnostic ? oqcar::SweepMode::Agnostic : oqcar::SweepMode::Pure);
    if (mixed->parsed()) return run_sweep(flags, oqcar::SweepMode::Mixed);
    if (evolve_cmd->parsed()) return run_evolve(flags, p, car_action, p_alert, t_max, dt);
    if (eq->parsed()) return run_equilibrium(flags, p, q);
    if (validate_cmd->parsed()) return run_validation(flags, inject_fault);
  } catch (const oqcar::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const oqcar::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
