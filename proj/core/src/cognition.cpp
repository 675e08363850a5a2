#include "oqcar/cognition.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "oqcar/errors.hpp"

namespace oqcar {

namespace {
constexpr double kTieTol = 1e-9;

void check_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
}
}  // namespace

void CognitionParams::validate() const {
  check_unit(alpha, "alpha");
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("lambda must be finite and non-negative");
  if (phi != 0.0) throw std::invalid_argument("phi is fixed at 0 in this model");
}

void DriverBelief::validate() const { check_unit(p, "p"); }

double luce_probability(double u_win, double u_lose, double lambda) {
  if (!(u_win > 0.0) || !(u_lose > 0.0))
    throw std::invalid_argument("luce_probability requires strictly positive utilities");
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be non-negative");
  const double d = lambda * (std::log(u_lose) - std::log(u_win));
  if (d > 700.0) return 0.0;
  if (d < -700.0) return 1.0;
  return 1.0 / (1.0 + std::exp(d));
}

LuceRates build_luce_rates(const UtilityTable& u, double lambda) {
  u.validate();
  return LuceRates{luce_probability(u.a2s, u.b2s, lambda), luce_probability(u.c2s, u.d2s, lambda),
                   luce_probability(u.a2d, u.b2d, lambda), luce_probability(u.c2d, u.d2d, lambda)};
}

ComplexMatrix build_cognition_matrix(const LuceRates& rates) {
  const double block[4] = {rates.mu, rates.nu, rates.xi, rates.o};
  ComplexMatrix c(kStates, kStates);
  for (int b = 0; b < 4; ++b) {
    const double a = block[b];
    check_unit(a, "luce rate");
    c(2 * b, 2 * b) = a;
    c(2 * b, 2 * b + 1) = a;
    c(2 * b + 1, 2 * b) = 1.0 - a;
    c(2 * b + 1, 2 * b + 1) = 1.0 - a;
  }
  return c;
}

DensityState initial_state_pure(const DriverBelief& belief, CarAction car_action) {
  belief.validate();
  return initial_state_mixed(belief, car_action == CarAction::Alert ? 1.0 : 0.0);
}

DensityState initial_state_mixed(const DriverBelief& belief, double p_alert) {
  belief.validate();
  check_unit(p_alert, "p_alert");
  const double p = belief.p;
  ComplexVector psi(kStates);
  const double w[4] = {std::sqrt(p * (1.0 - p_alert) / 2.0), std::sqrt(p * p_alert / 2.0),
                       std::sqrt((1.0 - p) * (1.0 - p_alert) / 2.0),
                       std::sqrt((1.0 - p) * p_alert / 2.0)};
  for (int b = 0; b < 4; ++b) {
    psi[2 * b] = w[b];
    psi[2 * b + 1] = w[b];
  }
  ComplexMatrix rho(kStates, kStates);
  for (int i = 0; i < kStates; ++i)
    for (int j = 0; j < kStates; ++j) rho(i, j) = psi[i] * std::conj(psi[j]);
  return DensityState(std::move(rho));
}

double pr_continue_from_state(const DensityState& rho) {
  Complex s = 0.0;
  for (int i = 1; i <= kStates; i += 2) s += rho.at1(i, i);
  if (std::abs(s.imag()) > 1e-8)
    throw NumericalError("continue probability has imaginary part " + std::to_string(s.imag()));
  return std::min(1.0, std::max(0.0, s.real()));
}

namespace {

double mixture_rate(const LuceRates& rates, double p, double p_alert) {
  return p * (1.0 - p_alert) * rates.mu + p * p_alert * rates.nu +
         (1.0 - p) * (1.0 - p_alert) * rates.xi + (1.0 - p) * p_alert * rates.o;
}

}  // namespace

double pr_continue_closed_form(const CognitionParams& params, const LuceRates& rates, double p,
                               double p_alert, double t) {
  params.validate();
  check_unit(p, "p");
  check_unit(p_alert, "p_alert");
  if (!std::isfinite(t) || t < 0.0) throw std::invalid_argument("t must be finite and non-negative");

  const double alpha = params.alpha;
  const double c = alpha * alpha + 4.0 * (1.0 - alpha) * (1.0 - alpha);
  const double r = mixture_rate(rates, p, p_alert);
  const double decay = std::exp(-alpha * t);
  const double phase = 2.0 * (1.0 - alpha) * t;
  const double h = (alpha / c) * decay * (2.0 * (1.0 - alpha) * std::sin(phase) - alpha * std::cos(phase));

  return 2.0 * (1.0 - alpha) * (1.0 - alpha) / c + alpha * alpha / c * r + r * h +
         (0.5 - 2.0 * (1.0 - alpha) * (1.0 - alpha) / c) * decay * std::cos(phase) -
         alpha * (1.0 - alpha) / c * decay * std::sin(phase);
}

double steady_state_pr_continue(const CognitionParams& params, const LuceRates& rates, double p,
                                double p_alert) {
  params.validate();
  check_unit(p, "p");
  check_unit(p_alert, "p_alert");
  if (params.alpha == 0.0)
    throw DegenerateDynamicsError("alpha = 0 has no decay and therefore no steady state");
  const double alpha = params.alpha;
  const double c = alpha * alpha + 4.0 * (1.0 - alpha) * (1.0 - alpha);
  return (2.0 * (1.0 - alpha) * (1.0 - alpha) + alpha * alpha * mixture_rate(rates, p, p_alert)) / c;
}

DriverResponse oq_pure(CarAction car_action, const CognitionParams& params,
                       const DriverBelief& belief, const UtilityTable& u) {
  const LuceRates rates = build_luce_rates(u, params.lambda);
  const double pr = steady_state_pr_continue(params, rates, belief.p,
                                             car_action == CarAction::Alert ? 1.0 : 0.0);
  return DriverResponse{pr >= 0.5 ? DriverAction::Continue : DriverAction::Stop, pr,
                        params.lambda == 0.0 || std::abs(pr - 0.5) <= kTieTol};
}

double oq_mix(double p_alert, const CognitionParams& params, const DriverBelief& belief,
              const UtilityTable& u) {
  const LuceRates rates = build_luce_rates(u, params.lambda);
  return steady_state_pr_continue(params, rates, belief.p, p_alert);
}

}  // namespace oqcar
