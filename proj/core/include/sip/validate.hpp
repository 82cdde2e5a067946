#ifndef SIP_VALIDATE_HPP
#define SIP_VALIDATE_HPP

// The invariant suite: shape-invariance constancy per stage, ground-state
// annihilation, eigenstate residuals, node theorem, orthonormality,
// intertwining, normalizability frontier, closed-form consistency, and the
// oscillator cross-check of all four solvers. Failures are data, not
// exceptions: each check reports its measured value against its bound.

#include <string>
#include <vector>

#include "sip/config.hpp"
#include "sip/models.hpp"

namespace sip {

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double bound = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

struct ValidateOptions {
  // Adds the stated offset to one level inside the residual check; a fault
  // injection hook used to prove the suite actually trips.
  double inject_energy_fault = 0.0;
  // Skip the solver cross-checks (keeps unit runs fast).
  bool run_oracle_block = true;
};

ValidationReport validate_all(const ModelParams& params, const SolverConfig& cfg,
                              const ValidateOptions& opts = {});

std::string format_report(const ValidationReport& report);

}  // namespace sip

#endif
