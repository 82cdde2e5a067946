#ifndef SIP_WAVEFUNCTION_HPP
#define SIP_WAVEFUNCTION_HPP

// Exact bound-state wavefunctions as cosh-power prefactors times a Laurent
// polynomial in u = e^{px}:
//
//   psi(x) = scale * cosh(px)^alpha * cosh(6px)^beta
//            * exp(gd_coeff * arctan(tanh(px/2))) * sum_k c_k u^k
//
// The representation is closed under differentiation, multiplication by
// sinh/cosh of integer multiples of px, and ladder application; the
// cosh/sinh-basis coefficients are recovered by symmetrizing c_k and c_{-k}.
// The bounded arctan factor carries the Scarf II asymmetry and is
// rate-neutral at +-infinity. All values are real; instances are immutable
// in practice (operations return new objects).

#include <map>
#include <optional>

#include "sip/config.hpp"
#include "sip/models.hpp"

namespace sip {

struct ExactWavefunction {
  double p = 1.0;
  double alpha = 0.0;     // exponent on cosh(px)
  double beta = 0.0;      // exponent on cosh(6px)
  double gd_coeff = 0.0;  // coefficient of arctan(tanh(px/2)) in the exponent
  std::map<int, double> coeffs{{0, 1.0}};
  double scale = 1.0;

  double max_abs_coeff() const;
  // Degree extremes over coefficients with |c_k| > 1e-13 * max|c|.
  int max_degree() const;
  int min_degree() const;
  // +1 even, -1 odd, nullopt when neither (e.g. Scarf II states).
  std::optional<int> parity() const;
};

enum class LadderDirection {
  Raising,  // -d/dx + W
  Lowering, // +d/dx + W
};

struct LadderStage {
  ParamStage stage;
  LadderDirection direction = LadderDirection::Raising;
};

// exp(-Integral W dx) at the given stage, unit Laurent part, scale 1.
// Tanh6: cosh(px)^{-A_k/p} cosh(6px)^{-B_k/(6p)}.
// ScarfII: cosh(px)^{-A_k/p} exp(-(2B/p) arctan(tanh(px/2))).
// The oscillator fixture has no Laurent-form ground state (throws).
ExactWavefunction ground_state(const ModelParams& params, const ParamStage& st);

// (-+ d/dx + W(x, stage)) applied in closed form; alpha and beta drop by one
// and the Laurent part picks up the exact sinh/cosh polynomial combination.
ExactWavefunction apply_ladder(const ModelParams& params, const ExactWavefunction& wf,
                               const LadderStage& ladder);

// Analytic first derivative in the same representation (alpha, beta drop by one).
ExactWavefunction derivative(const ExactWavefunction& wf);

// Numerically stable evaluation; log-space for large |x|, underflow -> 0.
double evaluate(const ExactWavefunction& wf, double x);

// Exact second derivative at x (two closed-form differentiations).
double derivative2(const ExactWavefunction& wf, double x);

// Decay rate of |psi| at +-infinity (the larger of the two sides); the state
// is normalizable iff this is < 0. For symmetric states this equals
// p*(alpha + 6*beta + maxdeg).
double decay_rate(const ExactWavefunction& wf);

// Strict sign changes of evaluate() on [a, b]: dense scan (8 points per
// period of the fastest Laurent frequency) plus bisection refinement.
int node_count(const ExactWavefunction& wf, double a, double b);
std::vector<double> node_positions(const ExactWavefunction& wf, double a, double b);

// Integral of wf1*wf2 over the real line; adaptive quadrature with analytic
// tail bounds from the decay rates. Opposite-parity operands return 0 without
// quadrature. Throws std::runtime_error for a non-normalizable operand.
double inner_product(const ExactWavefunction& wf1, const ExactWavefunction& wf2,
                     const SolverConfig& quad);

// Psi_n composed from raising stages n-1..0 on the stage-n ground state,
// L2-normalized, sign fixed so the leftmost interior extremum is positive.
// Throws std::out_of_range (n out of range) or std::runtime_error with the
// offending decay rate (non-normalizable request).
ExactWavefunction build_state(const ModelParams& params, int n, const SolverConfig& cfg);

// ||(-d2/dx2 + V - E) wf||_2 / ||wf||_2 with V = reporting_potential and the
// analytic second derivative.
double residual(const ExactWavefunction& wf, const ModelParams& params, double energy,
                const SolverConfig& quad);

}  // namespace sip

#endif
