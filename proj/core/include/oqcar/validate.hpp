#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "oqcar/sweep.hpp"

namespace oqcar {

struct CheckResult {
  std::string name;
  bool passed;
  double max_deviation;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool all_passed() const;
};

// Cross-oracle self-checks: the two generator construction routes must match
// entry for entry, the closed-form continue probability must match both
// integration routes, and evolved states must keep their invariants.
// inject_fault perturbs one generator entry so tests can confirm the
// structure check localizes failures.
ValidationReport run_validate(const SweepConfig& config, bool inject_fault = false);

void print_report(const ValidationReport& report, std::ostream& os);

}  // namespace oqcar
