#include "sip/models.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace sip {

namespace {

double sech(double y) { return 1.0 / std::cosh(y); }

// Largest integer strictly below r; an exact integer goes to r - 1.
int largest_int_below(double r) {
  const double f = std::floor(r);
  if (f == r) return static_cast<int>(f) - 1;
  return static_cast<int>(f);
}

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

constexpr int kOscillatorLevels = 6;  // fixture depth: n = 0..5

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::Tanh6: return "tanh6";
    case Family::ScarfII: return "scarf2";
    case Family::HarmonicOscillator: return "oscillator";
  }
  return "?";
}

ModelParams ModelParams::tanh6(double B0, double p) {
  ModelParams m;
  m.family = Family::Tanh6;
  m.B0 = B0;
  m.p = p;
  m.validate();
  return m;
}

ModelParams ModelParams::scarf2(double A, double B, double p) {
  ModelParams m;
  m.family = Family::ScarfII;
  m.A = A;
  m.B = B;
  m.p = p;
  m.validate();
  return m;
}

ModelParams ModelParams::oscillator(double omega) {
  ModelParams m;
  m.family = Family::HarmonicOscillator;
  m.omega = omega;
  m.validate();
  return m;
}

void ModelParams::validate() const {
  switch (family) {
    case Family::Tanh6:
      if (!(p > 0.0) || !(p < B0 / 3.0)) {
        std::ostringstream os;
        os << "tanh6 requires 0 < p < B0/3 (got p=" << p << ", B0=" << B0 << ")";
        fail(os.str());
      }
      break;
    case Family::ScarfII:
      if (!(p > 0.0) || !(A > p)) {
        std::ostringstream os;
        os << "scarf2 requires A > p > 0 (got A=" << A << ", p=" << p << ")";
        fail(os.str());
      }
      break;
    case Family::HarmonicOscillator:
      if (!(omega > 0.0)) fail("oscillator requires omega > 0");
      break;
  }
}

bool ModelParams::valid() const noexcept {
  try {
    validate();
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

double ModelParams::a0() const {
  if (family != Family::Tanh6) throw std::domain_error("a0() is defined for tanh6 only");
  return -B0 / 6.0 + p;
}

ParamStage stage(const ModelParams& params, int k) {
  if (k < 0) throw std::invalid_argument("stage index must be nonnegative");
  ParamStage st;
  st.k = k;
  switch (params.family) {
    case Family::Tanh6:
      st.A_k = params.a0() - k * params.p;
      st.B_k = params.B0 - 6.0 * k * params.p;
      st.c_k = st.A_k + st.B_k;
      break;
    case Family::ScarfII:
      st.A_k = params.A - k * params.p;
      st.B_k = params.B;
      st.c_k = st.A_k;
      break;
    case Family::HarmonicOscillator:
      st.A_k = params.omega;
      st.B_k = 0.0;
      st.c_k = 0.0;
      break;
  }
  return st;
}

double superpotential(const ModelParams& params, const ParamStage& st, double x) {
  const double p = params.p;
  switch (params.family) {
    case Family::Tanh6:
      return st.A_k * std::tanh(p * x) + st.B_k * std::tanh(6.0 * p * x);
    case Family::ScarfII:
      return st.A_k * std::tanh(p * x) + st.B_k * sech(p * x);
    case Family::HarmonicOscillator:
      return params.omega * x;
  }
  return 0.0;
}

double superpotential_prime(const ModelParams& params, const ParamStage& st, double x) {
  const double p = params.p;
  switch (params.family) {
    case Family::Tanh6: {
      const double s1 = sech(p * x);
      const double s6 = sech(6.0 * p * x);
      return st.A_k * p * s1 * s1 + 6.0 * st.B_k * p * s6 * s6;
    }
    case Family::ScarfII: {
      const double s = sech(p * x);
      return st.A_k * p * s * s - st.B_k * p * s * std::tanh(p * x);
    }
    case Family::HarmonicOscillator:
      return params.omega;
  }
  return 0.0;
}

PartnerPotentials partner_potentials(const ModelParams& params, const ParamStage& st,
                                     double x) {
  const double w = superpotential(params, st, x);
  const double wp = superpotential_prime(params, st, x);
  return {w * w - wp, w * w + wp};
}

double energy_shift(const ModelParams& params) {
  switch (params.family) {
    case Family::Tanh6:
      return (35.0 * params.B0 + 6.0 * params.p) * params.p / 6.0;
    case Family::ScarfII:
      return 0.0;
    case Family::HarmonicOscillator:
      return params.omega;  // omega^2 x^2 = (W^2 - W') + omega
  }
  return 0.0;
}

double shifted_potential(const ModelParams& params, double x) {
  if (params.family != Family::Tanh6)
    throw std::domain_error("shifted_potential is defined for tanh6 only");
  const ParamStage s0 = stage(params, 0);
  return partner_potentials(params, s0, x).v_minus + energy_shift(params);
}

double reporting_potential(const ModelParams& params, double x) {
  switch (params.family) {
    case Family::Tanh6:
      return shifted_potential(params, x);
    case Family::ScarfII:
      return partner_potentials(params, stage(params, 0), x).v_minus;
    case Family::HarmonicOscillator:
      return params.omega * params.omega * x * x;
  }
  return 0.0;
}

int n_max(const ModelParams& params) {
  params.validate();
  switch (params.family) {
    case Family::Tanh6:
      return largest_int_below((5.0 * params.B0 + 6.0 * params.p) / (42.0 * params.p));
    case Family::ScarfII:
      return largest_int_below(params.A / params.p);
    case Family::HarmonicOscillator:
      return kOscillatorLevels - 1;
  }
  return 0;
}

double exact_energy(const ModelParams& params, int n, bool shifted) {
  if (n < 0) throw std::invalid_argument("level index must be nonnegative");
  const int nm = n_max(params);
  if (n > nm) {
    std::ostringstream os;
    os << "level " << n << " exceeds n_max = " << nm;
    throw std::out_of_range(os.str());
  }
  double e_minus = 0.0;
  switch (params.family) {
    case Family::Tanh6: {
      const double c0 = stage(params, 0).c_k;
      const double cn = stage(params, n).c_k;
      e_minus = c0 * c0 - cn * cn;
      break;
    }
    case Family::ScarfII: {
      const double an = params.A - n * params.p;
      e_minus = params.A * params.A - an * an;
      break;
    }
    case Family::HarmonicOscillator:
      e_minus = 2.0 * n * params.omega;
      break;
  }
  return shifted ? e_minus + energy_shift(params) : e_minus;
}

double shape_invariance_constant(const ModelParams& params, int k) {
  if (k < 0 || k >= n_max(params))
    throw std::out_of_range("shape-invariance stage index out of range");
  const double ck = stage(params, k).c_k;
  const double ck1 = stage(params, k + 1).c_k;
  if (params.family == Family::HarmonicOscillator) return 2.0 * params.omega;
  return ck * ck - ck1 * ck1;
}

double monotonicity_bound(const ModelParams& params) {
  if (params.family != Family::Tanh6)
    throw std::domain_error("monotonicity_bound is defined for tanh6 only");
  params.validate();
  return (5.0 * params.B0 + 27.0 * params.p) / (42.0 * params.p);
}

double asymptote(const ModelParams& params, bool shifted) {
  if (params.family != Family::Tanh6)
    throw std::domain_error("asymptote is defined for tanh6 only");
  const double c0 = params.a0() + params.B0;
  return shifted ? c0 * c0 + energy_shift(params) : c0 * c0;
}

double relative_error(double exact, double approx) {
  if (exact == 0.0) throw std::domain_error("relative error undefined for exact == 0");
  return 100.0 * std::abs(exact - approx) / std::abs(exact);
}

SpectrumExact exact_spectrum(const ModelParams& params) {
  params.validate();
  SpectrumExact s;
  s.nmax = n_max(params);
  s.shift = energy_shift(params);
  if (params.family == Family::Tanh6) s.asymptote = asymptote(params);
  s.levels.reserve(s.nmax + 1);
  for (int n = 0; n <= s.nmax; ++n) s.levels.emplace_back(n, exact_energy(params, n));
  return s;
}

}  // namespace sip
