#ifndef SIP_MODELS_HPP
#define SIP_MODELS_HPP

// Shape-invariant 1-D models and their closed-form bound-state data.
//
// Units: the Schrodinger operator is -d^2/dx^2 + V(x), i.e. hbar = 2m = 1.
// Energies carry units of 1/length^2; the superpotential W has units 1/length.

#include <optional>
#include <utility>
#include <vector>

namespace sip {

enum class Family {
  Tanh6,               // W = A_k tanh(px) + B_k tanh(6px), A0 = -B0/6 + p
  ScarfII,             // W = A_k tanh(px) + B  sech(px)
  HarmonicOscillator,  // W = omega*x; numerical-solver test fixture
};

const char* family_name(Family f);

struct ModelParams {
  Family family = Family::Tanh6;
  double B0 = 24.0;    // Tanh6 well scale; requires 0 < p < B0/3 so E_1 > 0
  double p = 0.35;     // inverse-length scale (Tanh6, Scarf II)
  double A = 7.0;      // Scarf II depth; requires A > p > 0
  double B = 4.0;      // Scarf II asymmetry
  double omega = 1.0;  // oscillator frequency, > 0

  static ModelParams tanh6(double B0, double p);
  static ModelParams scarf2(double A, double B, double p);
  static ModelParams oscillator(double omega);

  // Throws std::invalid_argument naming the violated constraint.
  void validate() const;
  bool valid() const noexcept;

  double a0() const;  // Tanh6 only: A0 = -B0/6 + p
};

// Stage-k parameters of the shape-invariance sequence.
// Tanh6:   A_k = A0 - k*p, B_k = B0 - 6k*p, c_k = A_k + B_k (= c_0 - 7kp)
// ScarfII: A_k = A - k*p,  B_k = B (fixed), c_k = A_k
struct ParamStage {
  int k = 0;
  double A_k = 0.0;
  double B_k = 0.0;
  double c_k = 0.0;
};

ParamStage stage(const ModelParams& params, int k);

double superpotential(const ModelParams& params, const ParamStage& st, double x);
double superpotential_prime(const ModelParams& params, const ParamStage& st, double x);

struct PartnerPotentials {
  double v_minus;  // W^2 - W'
  double v_plus;   // W^2 + W'
};
PartnerPotentials partner_potentials(const ModelParams& params, const ParamStage& st,
                                     double x);

// Tanh6 only: V(x) = V_-(x, stage 0) + (35 B0 + 6p) p / 6, zero minimum at x = 0.
double shifted_potential(const ModelParams& params, double x);

// The potential each numerical method discretizes, in the same energy
// convention as exact_energy(): Tanh6 -> shifted_potential, Scarf II ->
// V_-(stage 0), oscillator -> omega^2 x^2.
double reporting_potential(const ModelParams& params, double x);

// reporting_potential(x) == V_-(x, stage 0) + energy_shift(params) for every family.
double energy_shift(const ModelParams& params);

// Closed-form level n. Default is the shifted convention (directly comparable
// across methods); shifted=false gives E_n^(-) with E_0^(-) = 0.
double exact_energy(const ModelParams& params, int n, bool shifted = true);

// C_k = c_k^2 - c_{k+1}^2 = exact_energy(k+1, unshifted) - exact_energy(k, unshifted).
double shape_invariance_constant(const ModelParams& params, int k);

// Largest normalizable level index. Tanh6: largest n < (5 B0 + 6p)/(42 p);
// ScarfII: largest n < A/p. An exact-integer ratio goes to ratio - 1.
// The oscillator fixture covers a fixed six levels (n_max = 5).
int n_max(const ModelParams& params);

// Tanh6 only: the monotonicity bound (5 B0 + 27 p)/(42 p); exceeds the
// normalizability ratio by exactly 1/2.
double monotonicity_bound(const ModelParams& params);

// Tanh6 only: lim_{x->inf} of the potential. Shifted convention by default,
// i.e. (A0+B0)^2 + energy_shift = (25 B0^2 + 270 B0 p + 72 p^2)/36.
double asymptote(const ModelParams& params, bool shifted = true);

// 100 * |exact - approx| / |exact|; throws std::domain_error when exact == 0.
double relative_error(double exact, double approx);

struct SpectrumExact {
  std::vector<std::pair<int, double>> levels;  // (n, E_n) in the shifted convention
  int nmax = 0;
  double shift = 0.0;
  std::optional<double> asymptote;  // Tanh6 only, shifted
};
SpectrumExact exact_spectrum(const ModelParams& params);

}  // namespace sip

#endif
