#pragma once

#include "oqcar/complex_matrix.hpp"
#include "oqcar/density_state.hpp"
#include "oqcar/game.hpp"

namespace oqcar {

// Driver model parameters: alpha weighs the dissipative (attention-driven)
// part of the dynamics, lambda the driver's ability to discriminate
// utilities. phi (belief formation) is fixed at zero in this model.
struct CognitionParams {
  double alpha = 0.2;
  double lambda = 10.0;
  double phi = 0.0;

  void validate() const;
};

// Per-world-state probabilities that the driver keeps driving:
// mu = safe/no-alert, nu = safe/alert, xi = dangerous/no-alert,
// o = dangerous/alert.
struct LuceRates {
  double mu, nu, xi, o;
};

struct DriverBelief {
  double p = 0.5;  // prior that the road is safe

  void validate() const;
};

// u_win^lambda / (u_win^lambda + u_lose^lambda), evaluated in log space so
// large lambda cannot overflow. Requires strictly positive utilities.
double luce_probability(double u_win, double u_lose, double lambda);

LuceRates build_luce_rates(const UtilityTable& u, double lambda);

// Rate matrix of the driver's choice process: four 2x2 blocks, each column
// summing to one, built from the Luce rates.
ComplexMatrix build_cognition_matrix(const LuceRates& rates);

// Equal-weight superposition over the continue/stop pair of each reachable
// world state, projected to a density matrix.
DensityState initial_state_pure(const DriverBelief& belief, CarAction car_action);
DensityState initial_state_mixed(const DriverBelief& belief, double p_alert);

// Probability that the driver continues: sum of the SNC, SAC, DNC, DAC
// diagonal weights. Clamped to [0,1]; complains if the sum has a
// non-negligible imaginary part.
double pr_continue_from_state(const DensityState& rho);

// Full time-dependent continue probability of the evolved state, in closed
// form (decaying oscillation around an affine steady level).
double pr_continue_closed_form(const CognitionParams& params, const LuceRates& rates, double p,
                               double p_alert, double t);

// Limit of pr_continue_closed_form for t -> infinity; requires alpha > 0.
double steady_state_pr_continue(const CognitionParams& params, const LuceRates& rates, double p,
                                double p_alert);

struct DriverResponse {
  DriverAction action;
  double pr_continue;
  // Set when lambda is zero or the steady level ties 0.5 within 1e-9: the
  // threshold decision is then forced by the tie rule, not by preference.
  bool degenerate;
};

// Threshold response to a pure car action: Continue iff the steady
// continue-probability is at least one half.
DriverResponse oq_pure(CarAction car_action, const CognitionParams& params,
                       const DriverBelief& belief, const UtilityTable& u);

// The driver's mixed response: the steady continue-probability itself, as a
// function of the car's alert probability.
double oq_mix(double p_alert, const CognitionParams& params, const DriverBelief& belief,
              const UtilityTable& u);

}  // namespace oqcar
