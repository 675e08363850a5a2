#include "oqcar/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "oqcar/cognition.hpp"
#include "oqcar/errors.hpp"
#include "oqcar/oqs_engine.hpp"

namespace oqcar {

bool ValidationReport::all_passed() const {
  for (const CheckResult& c : checks)
    if (!c.passed) return false;
  return true;
}

namespace {

const double kAlphaGrid[] = {0.0, 0.2, 0.5, 0.8, 1.0};
const double kLambdaGrid[] = {0.0, 1.0, 3.0, 10.0};

std::string entry_name(int i, int j) {
  return "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

CheckResult exact_match(const std::string& name, const ComplexMatrix& got,
                        const ComplexMatrix& want, const std::string& context) {
  for (int i = 0; i < got.rows(); ++i)
    for (int j = 0; j < got.cols(); ++j)
      if (got(i, j) != want(i, j))
        return {name, false, std::abs(got(i, j) - want(i, j)),
                context + ": first mismatch at " + entry_name(i, j)};
  return {name, true, 0.0, context};
}

CheckResult check_jump_structure() {
  for (int m = 1; m <= kStates; ++m)
    for (int n = 1; n <= kStates; ++n) {
      CheckResult r = exact_match("dissipator-term-structure", build_lambda_closed(m, n),
                                  build_lambda(m, n),
                                  "pair (" + std::to_string(m) + "," + std::to_string(n) + ")");
      if (!r.passed) return r;
    }
  return {"dissipator-term-structure", true, 0.0, "all 64 jump pairs match exactly"};
}

CheckResult check_hamiltonian_vectorization() {
  return exact_match("hamiltonian-vectorization", vectorize_hamiltonian_closed(),
                     vectorize_hamiltonian(build_hamiltonian()), "sparse vs kronecker assembly");
}

CheckResult check_dissipator_sum(const UtilityTable& u) {
  for (double lambda : kLambdaGrid) {
    const ComplexMatrix c = build_cognition_matrix(build_luce_rates(u, lambda));
    CheckResult r = exact_match("dissipator-vectorization", build_vec_l_closed(c),
                                build_vec_l(c).matrix, "lambda=" + std::to_string(lambda));
    if (!r.passed) return r;
  }
  return {"dissipator-vectorization", true, 0.0, "sparse vs summed assembly, all lambda"};
}

CheckResult check_generator_assembly(const UtilityTable& u, bool inject_fault) {
  for (double alpha : kAlphaGrid)
    for (double lambda : kLambdaGrid) {
      const ComplexMatrix c = build_cognition_matrix(build_luce_rates(u, lambda));
      GeneratorMatrix closed = build_generator(alpha, c);
      const GeneratorMatrix brute = build_generator_brute(alpha, c);
      if (inject_fault) closed.entries.set1(19, 28, closed.entries.at1(19, 28) + 1e-3);
      CheckResult r = exact_match(
          "generator-assembly", closed.entries, brute.entries,
          "alpha=" + std::to_string(alpha) + " lambda=" + std::to_string(lambda));
      if (!r.passed) return r;
      // everything outside the four 16x16 diagonal blocks must be exactly zero
      for (int i = 0; i < kVecDim; ++i)
        for (int j = 0; j < kVecDim; ++j)
          if (i / 16 != j / 16 && closed.entries(i, j) != Complex(0.0, 0.0))
            return {"generator-assembly", false, std::abs(closed.entries(i, j)),
                    "nonzero outside blocks at " + entry_name(i, j)};
    }
  return {"generator-assembly", true, 0.0, "block construction vs combined assembly, full grid"};
}

CheckResult check_trace_conservation(const UtilityTable& u) {
  double worst = 0.0;
  for (double alpha : kAlphaGrid)
    for (double lambda : kLambdaGrid) {
      const ComplexMatrix c = build_cognition_matrix(build_luce_rates(u, lambda));
      const GeneratorMatrix g = build_generator(alpha, c);
      for (int col = 1; col <= kVecDim; ++col) {
        Complex s = 0.0;
        for (int k = 1; k <= kStates; ++k) s += g.entries.at1(9 * k - 8, col);
        worst = std::max(worst, std::abs(s));
      }
    }
  return {"generator-trace-conservation", worst <= 1e-10, worst,
          "diagonal-row column sums over the full grid"};
}

CheckResult check_evolution_equivalence(const SweepConfig& config) {
  const UtilityTable& u = config.utilities;
  double worst_closed = 0.0, worst_direct = 0.0;
  std::vector<double> alphas = {0.2, 0.8, 1.0};
  if (config.alpha > 0.0) alphas.push_back(config.alpha);
  std::vector<double> lambdas = {0.0, 1.0, 10.0, config.lambda};
  for (double alpha : alphas)
    for (double lambda : lambdas) {
      const LuceRates rates = build_luce_rates(u, lambda);
      const ComplexMatrix c = build_cognition_matrix(rates);
      const GeneratorMatrix g = build_generator(alpha, c);
      const CognitionParams params{alpha, lambda, 0.0};
      for (double p : {0.0, 0.5, 1.0})
        for (double pa : {0.0, 1.0})
          for (double t : {0.0, 1.0, 10.0}) {
            const DensityState rho0 = initial_state_mixed(DriverBelief{p}, pa);
            const double closed = pr_continue_closed_form(params, rates, p, pa, t);
            const double via_expm = pr_continue_from_state(evolve(g, rho0, t));
            const double via_direct =
                pr_continue_from_state(evolve_direct(alpha, c, rho0, t, 0.01));
            worst_closed = std::max(worst_closed, std::abs(closed - via_expm));
            worst_direct = std::max(worst_direct, std::abs(closed - via_direct));
          }
    }
  const bool ok = worst_closed <= 1e-8 && worst_direct <= 1e-6;
  char buf[160];
  std::snprintf(buf, sizeof buf, "closed vs exponential %.3e (tol 1e-8), vs direct %.3e (tol 1e-6)",
                worst_closed, worst_direct);
  return {"evolution-equivalence", ok, std::max(worst_closed, worst_direct), buf};
}

CheckResult check_state_invariants(const SweepConfig& config) {
  std::mt19937_64 rng(20240811);
  std::normal_distribution<double> normal(0.0, 1.0);
  const ComplexMatrix c = build_cognition_matrix(build_luce_rates(config.utilities, 3.0));
  const GeneratorMatrix g = build_generator(0.5, c);
  double worst = 0.0;
  for (int draw = 0; draw < 4; ++draw) {
    ComplexVector psi(kStates);
    double norm = 0.0;
    for (Complex& a : psi) {
      a = Complex(normal(rng), normal(rng));
      norm += std::norm(a);
    }
    ComplexMatrix rho(kStates, kStates);
    for (int i = 0; i < kStates; ++i)
      for (int j = 0; j < kStates; ++j) rho(i, j) = psi[i] * std::conj(psi[j]) / norm;
    const DensityState rho0{rho};
    for (double t : {0.1, 1.0, 10.0, 100.0}) {
      const DensityState rt = evolve(g, rho0, t);
      worst = std::max(worst, std::abs(rt.trace_real() - 1.0));
      worst = std::max(worst, rt.hermiticity_defect());
      for (int i = 0; i < kStates; ++i)
        if (rt.entry(i, i).real() < -1e-9)
          return {"state-invariants", false, -rt.entry(i, i).real(),
                  "negative diagonal weight at t=" + std::to_string(t)};
    }
  }
  return {"state-invariants", worst <= 1e-10, worst,
          "trace and hermiticity drift over random states"};
}

}  // namespace

ValidationReport run_validate(const SweepConfig& config, bool inject_fault) {
  ValidationReport report;
  try {
    config.utilities.validate();
    report.checks.push_back({"utility-table", true, 0.0, "all fields finite, driver side positive"});
  } catch (const ConfigError& e) {
    report.checks.push_back({"utility-table", false, 0.0, std::string("field ") + e.field() + ": " + e.what()});
    return report;  // everything downstream needs valid utilities
  }
  report.checks.push_back(check_jump_structure());
  report.checks.push_back(check_hamiltonian_vectorization());
  report.checks.push_back(check_dissipator_sum(config.utilities));
  report.checks.push_back(check_generator_assembly(config.utilities, inject_fault));
  report.checks.push_back(check_trace_conservation(config.utilities));
  report.checks.push_back(check_evolution_equivalence(config));
  report.checks.push_back(check_state_invariants(config));
  return report;
}

void print_report(const ValidationReport& report, std::ostream& os) {
  for (const CheckResult& c : report.checks) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", c.max_deviation);
    os << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << " (max deviation " << buf << ")";
    if (!c.detail.empty()) os << " - " << c.detail;
    os << "\n";
  }
  os << (report.all_passed() ? "validation passed" : "validation FAILED") << "\n";
}

}  // namespace oqcar
