#ifndef SIP_SOLVERS_HPP
#define SIP_SOLVERS_HPP

// Four independent eigensolvers for -psi'' + V psi = E psi on [-c, c]:
//   fd_spectrum    finite-difference matrix + Sturm bisection
//   shooting_solve Numerov integration from both walls, Wronskian matching
//   wkb_energy     semiclassical quantization, action = (n + 1/2) pi
//   swkb_energy    SUSY semiclassical quantization on W^2, action = n pi
// All report energies in the family's shifted convention (see models.hpp).

#include <utility>
#include <vector>

#include "sip/config.hpp"
#include "sip/models.hpp"
#include "sip/tridiagonal.hpp"

namespace sip {

// The m lowest Dirichlet eigenvalues, ascending.
std::vector<double> fd_spectrum(const ModelParams& params, const SolverConfig& cfg,
                                int m);

struct GridFunction {
  double half_width = 0.0;
  double h = 0.0;
  std::vector<double> x;
  std::vector<double> psi;  // h * sum(psi^2) = 1
};
GridFunction fd_eigenstate(const ModelParams& params, const SolverConfig& cfg, int k);

// Classical turning points of reporting_potential at the given energy.
struct TurningPoints {
  std::vector<double> points;                     // roots of V - E, ascending
  std::vector<std::pair<double, double>> allowed; // closed classically allowed intervals
  bool outer_open = false;                        // allowed region reaches the walls
  int count() const { return static_cast<int>(points.size()); }
};
TurningPoints turning_points(const ModelParams& params, double energy,
                             const SolverConfig& cfg);

// Number of Dirichlet eigenvalues strictly below the energy, by a Numerov
// node sweep (independent of the matrix route).
int shooting_count_below(const ModelParams& params, const SolverConfig& cfg,
                         double energy);

// n-th eigenvalue via bisection on the node count, then bisection/secant on
// the two-sided matching defect. Tanh6 searches below the asymptote unless
// allow_above_asymptote replicates the boxed continuum artifact.
double shooting_solve(const ModelParams& params, const SolverConfig& cfg, int n,
                      bool allow_above_asymptote = false);

// Action integral of sqrt(E - V) over the classically allowed interval that
// contains the potential minimum (tanh-sinh quadrature, turning-point safe).
double wkb_action(const ModelParams& params, double energy, const SolverConfig& cfg,
                  bool* degraded = nullptr);

// Solves wkb_action(E) = (n + 1/2) pi. A four-turning-point configuration
// uses the innermost pair and reports degraded confidence. Throws
// std::runtime_error on bracket failure.
double wkb_energy(const ModelParams& params, int n, const SolverConfig& cfg,
                  bool* degraded = nullptr);

// Action of sqrt(e - W^2) between the zeros of e - W^2 (stage-0 superpotential).
double swkb_action(const ModelParams& params, double e_unshifted,
                   const SolverConfig& cfg);

// Solves swkb_action(e) = n pi on the unshifted scale, reports e + shift.
// n = 0 returns the shift exactly (zero action).
double swkb_energy(const ModelParams& params, int n, const SolverConfig& cfg);

// Observed convergence order from eigenvalue n on grids (N, 2N, 4N);
// ~2 for the central-difference scheme. Throws std::runtime_error when the
// differences sit at the noise floor (unreliable order).
double richardson_order(double e_coarse, double e_mid, double e_fine);
double richardson_check(const ModelParams& params, int n, const SolverConfig& cfg);

}  // namespace sip

#endif
