// Aggregated self-verification: every cross-check that ties the independent
// implementations together (closed form vs master equation, quadrature vs
// decay rate, mirror vs atom pair) plus the state-invariant suites, collected
// into one machine-readable report.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mirrorsim/sweep.hpp"

namespace mirrorsim {

struct CheckResult {
  std::string name;
  bool passed;
  double max_residual;  // worst observed deviation, in the units of `note`
  double tolerance;     // the gate max_residual is compared against
  std::string note;
};

struct VerifyOptions {
  // Deliberately corrupts the closed-form side of the cross-checks (flips the
  // sign of gamma_bar_1 fed to it). A healthy build must then FAIL the
  // closed-form checks: this proves the comparison has teeth.
  bool mutate_gamma_bar_sign = false;
  int random_draws = 500;
  unsigned seed = 7041984;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_passed = false;
};

VerifyReport verify_all(const VerifyOptions& options = {});

void write_json(const VerifyReport& report, std::ostream& out);

}  // namespace mirrorsim
