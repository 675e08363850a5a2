#pragma once

#include <optional>
#include <vector>

#include "oqcar/cognition.hpp"
#include "oqcar/game.hpp"

namespace oqcar {

struct PureProfile {
  CarAction car;
  DriverAction driver;
  double pr_continue;  // steady continue-probability behind the driver action
  bool degenerate;     // driver action forced by the tie rule
  bool payoff_tie;     // car payoffs tied, profile admitted by weak inequality
};

// 0, 1 or 2 profiles: one candidate per car action, kept when that action is
// weakly payoff-optimal against the driver's response to it.
struct PureEquilibriumSet {
  std::vector<PureProfile> profiles;

  bool contains(CarAction car, DriverAction driver) const;
  bool any_driver(DriverAction driver) const;
  bool any_car(CarAction car) const;
};

PureEquilibriumSet pure_equilibria(const CognitionParams& params, const DriverBelief& belief,
                                   const CarBelief& car_belief, const UtilityTable& u);

// Continue-probability that makes the car indifferent between alerting and
// not. Empty when the solution falls outside [0,1]; throws
// NoIndifferenceError when the payoff difference does not depend on p_C.
std::optional<double> mixed_pc_star(double q, const UtilityTable& u);

struct PaStar {
  double value;
  // The steady response did not depend on p_A and already matched; the value
  // is the canonical midpoint 0.5.
  bool any_p_alert;
};

// Inverts the (affine) steady-state response of the driver: finds the alert
// probability whose steady continue-probability equals pc_star.
std::optional<PaStar> solve_pa_star(double pc_star, const CognitionParams& params,
                                    const DriverBelief& belief, const UtilityTable& u);

// Bisection on the same affine map; kept as an independent route for
// cross-checking the closed-form inversion.
std::optional<double> solve_pa_star_bisection(double pc_star, const CognitionParams& params,
                                              const DriverBelief& belief, const UtilityTable& u);

struct MixedEquilibrium {
  double p_alert_star;
  double p_continue_star;
  double residual_indifference;  // |U_N(pc*) - U_A(pc*)|
  double residual_response;     // |OQ_mix(pa*) - pc*|
  bool any_p_alert;
};

// Composition of mixed_pc_star and solve_pa_star with both residuals
// re-verified; absence is a normal outcome.
std::optional<MixedEquilibrium> mixed_equilibrium(const CognitionParams& params,
                                                  const DriverBelief& belief,
                                                  const CarBelief& car_belief,
                                                  const UtilityTable& u);

}  // namespace oqcar
