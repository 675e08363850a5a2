#include "oqcar/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "oqcar/errors.hpp"

namespace oqcar {

namespace {
constexpr double kResidualTol = 1e-9;
constexpr double kSlopeTol = 1e-12;
constexpr double kCrossCheckTol = 1e-10;
}  // namespace

bool PureEquilibriumSet::contains(CarAction car, DriverAction driver) const {
  for (const PureProfile& p : profiles)
    if (p.car == car && p.driver == driver) return true;
  return false;
}

bool PureEquilibriumSet::any_driver(DriverAction driver) const {
  for (const PureProfile& p : profiles)
    if (p.driver == driver) return true;
  return false;
}

bool PureEquilibriumSet::any_car(CarAction car) const {
  for (const PureProfile& p : profiles)
    if (p.car == car) return true;
  return false;
}

PureEquilibriumSet pure_equilibria(const CognitionParams& params, const DriverBelief& belief,
                                   const CarBelief& car_belief, const UtilityTable& u) {
  PureEquilibriumSet out;
  for (CarAction s1 : {CarAction::NoAlert, CarAction::Alert}) {
    const CarAction other = s1 == CarAction::NoAlert ? CarAction::Alert : CarAction::NoAlert;
    const DriverResponse s2 = oq_pure(s1, params, belief, u);
    const double p_c = s2.action == DriverAction::Continue ? 1.0 : 0.0;
    const double own = car_expected_utility(s1, p_c, car_belief.q, u);
    const double alt = car_expected_utility(other, p_c, car_belief.q, u);
    if (own >= alt)
      out.profiles.push_back(PureProfile{s1, s2.action, s2.pr_continue, s2.degenerate,
                                         std::abs(own - alt) <= kResidualTol});
  }
  return out;
}

std::optional<double> mixed_pc_star(double q, const UtilityTable& u) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("q must lie in [0,1]");
  const double delta_s = u.b1s - u.d1s;
  const double delta_d = u.b1d - u.d1d;
  const double num = q * delta_s + (1.0 - q) * delta_d;
  const double den = q * (delta_s + u.c1s - u.a1s) + (1.0 - q) * (delta_d + u.c1d - u.a1d);
  if (den == 0.0)
    throw NoIndifferenceError("car payoff difference does not depend on p_C; never indifferent");
  const double pc = num / den;
  // tolerate boundary values that miss [0,1] by rounding only
  if (pc < -1e-12 || pc > 1.0 + 1e-12) return std::nullopt;
  return std::min(1.0, std::max(0.0, pc));
}

namespace {

// Steady continue-probability as an affine map pc = k0 + k1 * p_alert.
void steady_response_coefficients(const CognitionParams& params, const DriverBelief& belief,
                                  const UtilityTable& u, double& k0, double& k1) {
  const LuceRates r = build_luce_rates(u, params.lambda);
  const double alpha = params.alpha;
  if (alpha == 0.0)
    throw DegenerateDynamicsError("alpha = 0 has no decay and therefore no steady state");
  const double c = alpha * alpha + 4.0 * (1.0 - alpha) * (1.0 - alpha);
  const double p = belief.p;
  k0 = (2.0 * (1.0 - alpha) * (1.0 - alpha) + alpha * alpha * (p * r.mu + (1.0 - p) * r.xi)) / c;
  k1 = alpha * alpha * (p * (r.nu - r.mu) + (1.0 - p) * (r.o - r.xi)) / c;
}

}  // namespace

std::optional<PaStar> solve_pa_star(double pc_star, const CognitionParams& params,
                                    const DriverBelief& belief, const UtilityTable& u) {
  double k0 = 0.0, k1 = 0.0;
  steady_response_coefficients(params, belief, u, k0, k1);
  if (std::abs(k1) <= kSlopeTol) {
    if (std::abs(k0 - pc_star) <= kResidualTol) return PaStar{0.5, true};
    return std::nullopt;
  }
  const double pa = (pc_star - k0) / k1;
  // tolerate boundary values that miss [0,1] by rounding only
  if (pa < -1e-12 || pa > 1.0 + 1e-12) return std::nullopt;
  return PaStar{std::min(1.0, std::max(0.0, pa)), false};
}

std::optional<double> solve_pa_star_bisection(double pc_star, const CognitionParams& params,
                                              const DriverBelief& belief, const UtilityTable& u) {
  auto gap = [&](double pa) { return oq_mix(pa, params, belief, u) - pc_star; };
  double lo = 0.0, hi = 1.0;
  double glo = gap(lo), ghi = gap(hi);
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if ((glo > 0.0) == (ghi > 0.0)) return std::nullopt;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gm = gap(mid);
    if (gm == 0.0) return mid;
    if ((gm > 0.0) == (glo > 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::optional<MixedEquilibrium> mixed_equilibrium(const CognitionParams& params,
                                                  const DriverBelief& belief,
                                                  const CarBelief& car_belief,
                                                  const UtilityTable& u) {
  const std::optional<double> pc = mixed_pc_star(car_belief.q, u);
  if (!pc) return std::nullopt;
  const std::optional<PaStar> pa = solve_pa_star(*pc, params, belief, u);
  if (!pa) return std::nullopt;

  const double residual_ind = std::abs(car_expected_utility(CarAction::NoAlert, *pc, car_belief.q, u) -
                                       car_expected_utility(CarAction::Alert, *pc, car_belief.q, u));
  const double residual_resp = std::abs(oq_mix(pa->value, params, belief, u) - *pc);
  if (residual_ind > kResidualTol || residual_resp > kResidualTol) return std::nullopt;

  if (!pa->any_p_alert) {
    const std::optional<double> pa_bis = solve_pa_star_bisection(*pc, params, belief, u);
    if (pa_bis) {
      if (std::abs(*pa_bis - pa->value) > kCrossCheckTol)
        throw NumericalError("closed-form alert probability disagrees with bisection");
    } else if (pa->value > kCrossCheckTol && pa->value < 1.0 - kCrossCheckTol) {
      // a root strictly inside [0,1] must be bracketable; only boundary
      // solutions may fall outside the bisection interval by rounding
      throw NumericalError("bisection finds no root where the closed form does");
    }
  }
  return MixedEquilibrium{pa->value, *pc, residual_ind, residual_resp, pa->any_p_alert};
}

}  // namespace oqcar
