#include "oqcar/game.hpp"

#include <cmath>
#include <stdexcept>

#include "oqcar/errors.hpp"

namespace oqcar {

namespace {
constexpr double kIndifferenceTol = 1e-9;

void check_range(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
}
}  // namespace

char to_letter(CarAction a) { return a == CarAction::NoAlert ? 'N' : 'A'; }
char to_letter(DriverAction a) { return a == DriverAction::Continue ? 'C' : 'S'; }

void UtilityTable::validate() const {
  struct Entry {
    const char* name;
    double value;
    bool driver;
  };
  const Entry entries[] = {
      {"a1s", a1s, false}, {"b1s", b1s, false}, {"c1s", c1s, false}, {"d1s", d1s, false},
      {"a1d", a1d, false}, {"b1d", b1d, false}, {"c1d", c1d, false}, {"d1d", d1d, false},
      {"a2s", a2s, true},  {"b2s", b2s, true},  {"c2s", c2s, true},  {"d2s", d2s, true},
      {"a2d", a2d, true},  {"b2d", b2d, true},  {"c2d", c2d, true},  {"d2d", d2d, true},
  };
  for (const Entry& e : entries) {
    if (!std::isfinite(e.value)) throw ConfigError(e.name, std::string(e.name) + " must be finite");
    if (e.driver && !(e.value > 0.0))
      throw ConfigError(e.name, std::string(e.name) + " must be strictly positive");
  }
}

UtilityTable default_utility_table() {
  UtilityTable u{};
  u.a1s = 85; u.b1s = 75; u.c1s = 40; u.d1s = 50;
  u.a1d = 25; u.b1d = 30; u.c1d = 75; u.d1d = 85;
  u.a2s = 85; u.b2s = 50; u.c2s = 85; u.d2s = 50;
  u.a2d = 25; u.b2d = 60; u.c2d = 25; u.d2d = 85;
  return u;
}

double car_expected_utility(CarAction action, double p_c, double q, const UtilityTable& u) {
  check_range(p_c, "p_c");
  check_range(q, "q");
  if (action == CarAction::NoAlert)
    return p_c * (u.a1s * q + (1.0 - q) * u.a1d) + (1.0 - p_c) * (u.b1s * q + (1.0 - q) * u.b1d);
  return p_c * (u.c1s * q + (1.0 - q) * u.c1d) + (1.0 - p_c) * (u.d1s * q + (1.0 - q) * u.d1d);
}

CarResponse best_response_car(double p_c, double q, const UtilityTable& u) {
  const double un = car_expected_utility(CarAction::NoAlert, p_c, q, u);
  const double ua = car_expected_utility(CarAction::Alert, p_c, q, u);
  if (std::abs(un - ua) <= kIndifferenceTol) return CarResponse::Indifferent;
  return un > ua ? CarResponse::NoAlert : CarResponse::Alert;
}

CarAction agnostic_response_car(double q) {
  check_range(q, "q");
  return q < 0.5 ? CarAction::Alert : CarAction::NoAlert;
}

}  // namespace oqcar
