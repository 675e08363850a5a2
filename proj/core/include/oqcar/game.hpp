#pragma once

#include <string>

namespace oqcar {

enum class CarAction { NoAlert, Alert };
enum class DriverAction { Continue, Stop };

// Best-response outcome for the car; Indifferent marks a payoff tie.
enum class CarResponse { NoAlert, Alert, Indifferent };

char to_letter(CarAction a);
char to_letter(DriverAction a);

// Bimatrix payoffs for (car action x driver action) under the safe and
// dangerous road states. First index of each symbol: 1 = car, 2 = driver;
// trailing letter: s = safe, d = dangerous. Rows a/b are no-alert with the
// driver continuing/stopping, rows c/d the same under an alert.
struct UtilityTable {
  double a1s, b1s, c1s, d1s;
  double a1d, b1d, c1d, d1d;
  double a2s, b2s, c2s, d2s;
  double a2d, b2d, c2d, d2d;

  // Throws ConfigError naming the offending field. Driver utilities must be
  // strictly positive so the choice rule stays defined at every lambda.
  void validate() const;
};

// Payoffs used throughout the regression fixtures.
UtilityTable default_utility_table();

struct CarBelief {
  double q = 0.5;  // prior that the road is safe
};

// Expected payoff of a car action when the driver continues with
// probability p_c and the road is safe with probability q.
double car_expected_utility(CarAction action, double p_c, double q, const UtilityTable& u);

// Payoff-maximizing car action against a driver who continues with
// probability p_c; Indifferent when the payoffs agree to within 1e-9.
CarResponse best_response_car(double p_c, double q, const UtilityTable& u);

// Benchmark car that ignores the driver: alert iff q < 0.5.
CarAction agnostic_response_car(double q);

}  // namespace oqcar
