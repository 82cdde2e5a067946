#ifndef SIP_CONFIG_HPP
#define SIP_CONFIG_HPP

#include "sip/models.hpp"

namespace sip {

// Settings shared by all numerical methods. half_width/grid_points of 0 mean
// "resolve per family" (see resolve_config).
struct SolverConfig {
  double half_width = 0.0;  // domain [-c, c]
  int grid_points = 0;      // N subintervals; interior Dirichlet grid has N-1 points
  double energy_tol = 0.05; // comparison/flag band (asymptote flags, cross-method checks)
  double root_tol = 1e-10;  // turning points, shooting defect
  double quad_tol = 1e-6;   // action-integral absolute error target
  int max_iter = 200;

  void validate() const;  // throws std::invalid_argument
};

// Fills unset fields. Domain: c = max(18/r_min, 30/p) with r_min the slowest
// exponential decay rate among the retained exact states, so tail truncation
// stays below 1e-7. Oscillator fixture: c = 12, N = 4000.
SolverConfig resolve_config(const ModelParams& params, SolverConfig base = {});

}  // namespace sip

#endif
