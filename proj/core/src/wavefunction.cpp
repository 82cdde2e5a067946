#include "sip/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sip/quadrature.hpp"

namespace sip {

namespace {

using Coeffs = std::map<int, double>;

// log(cosh y) without overflow
double log_cosh(double y) {
  const double a = std::abs(y);
  return a + std::log1p(std::exp(-2.0 * a)) - 0.6931471805599453094;
}

// arctan(tanh(y/2)); bounded by pi/4, derivative sech(y)/2
double gd_half(double y) { return std::atan(std::tanh(0.5 * y)); }

void add_scaled(Coeffs& dst, const Coeffs& src, double f) {
  if (f == 0.0) return;
  for (const auto& [k, v] : src) dst[k] += f * v;
}

Coeffs mul_sinh(const Coeffs& co, int m) {
  Coeffs r;
  for (const auto& [k, v] : co) {
    r[k + m] += 0.5 * v;
    r[k - m] -= 0.5 * v;
  }
  return r;
}

Coeffs mul_cosh(const Coeffs& co, int m) {
  Coeffs r;
  for (const auto& [k, v] : co) {
    r[k + m] += 0.5 * v;
    r[k - m] += 0.5 * v;
  }
  return r;
}

Coeffs ddx(const Coeffs& co, double p) {
  Coeffs r;
  for (const auto& [k, v] : co)
    if (k != 0) r[k] = k * p * v;
  return r;
}

void drop_exact_zeros(Coeffs& co) {
  for (auto it = co.begin(); it != co.end();)
    it = (it->second == 0.0) ? co.erase(it) : std::next(it);
}

}  // namespace

double ExactWavefunction::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [k, v] : coeffs) m = std::max(m, std::abs(v));
  return m;
}

int ExactWavefunction::max_degree() const {
  const double cut = 1e-13 * max_abs_coeff();
  int deg = 0;
  for (const auto& [k, v] : coeffs)
    if (std::abs(v) > cut) deg = std::max(deg, k);
  return deg;
}

int ExactWavefunction::min_degree() const {
  const double cut = 1e-13 * max_abs_coeff();
  int deg = 0;
  for (const auto& [k, v] : coeffs)
    if (std::abs(v) > cut) deg = std::min(deg, k);
  return deg;
}

std::optional<int> ExactWavefunction::parity() const {
  if (gd_coeff != 0.0) return std::nullopt;
  const double scale_ref = max_abs_coeff();
  if (scale_ref == 0.0) return +1;
  bool even = true, odd = true;
  for (const auto& [k, v] : coeffs) {
    const auto it = coeffs.find(-k);
    const double mirror = (it == coeffs.end()) ? 0.0 : it->second;
    if (std::abs(v - mirror) > 1e-12 * scale_ref) even = false;
    if (std::abs(v + mirror) > 1e-12 * scale_ref) odd = false;
  }
  if (even) return +1;
  if (odd) return -1;
  return std::nullopt;
}

ExactWavefunction ground_state(const ModelParams& params, const ParamStage& st) {
  params.validate();
  ExactWavefunction wf;
  wf.p = params.p;
  wf.coeffs = {{0, 1.0}};
  switch (params.family) {
    case Family::Tanh6:
      wf.alpha = -st.A_k / params.p;
      wf.beta = -st.B_k / (6.0 * params.p);
      break;
    case Family::ScarfII:
      wf.alpha = -st.A_k / params.p;
      wf.beta = 0.0;
      wf.gd_coeff = -2.0 * st.B_k / params.p;
      break;
    case Family::HarmonicOscillator:
      throw std::domain_error("the oscillator fixture has no Laurent-form ground state");
  }
  return wf;
}

ExactWavefunction apply_ladder(const ModelParams& params, const ExactWavefunction& wf,
                               const LadderStage& ladder) {
  if (std::abs(params.p - wf.p) > 1e-14 * std::max(1.0, std::abs(params.p)))
    throw std::invalid_argument("wavefunction and ladder stage disagree on p");
  const double p = wf.p;
  const double sgn = (ladder.direction == LadderDirection::Raising) ? -1.0 : +1.0;
  const double As = ladder.stage.A_k;

  ExactWavefunction out;
  out.p = p;
  out.scale = wf.scale;
  out.gd_coeff = wf.gd_coeff;
  Coeffs acc;

  if (params.family == Family::Tanh6) {
    // sgn*psi' + W*psi at prefactor exponents (alpha-1, beta-1):
    //   (A_s + sgn*alpha*p)   sinh(px) cosh(6px) P
    // + (B_s + sgn*6*beta*p)  cosh(px) sinh(6px) P
    // + sgn                   cosh(px) cosh(6px) P'
    const double Bs = ladder.stage.B_k;
    add_scaled(acc, mul_cosh(mul_sinh(wf.coeffs, 1), 6), As + sgn * wf.alpha * p);
    add_scaled(acc, mul_sinh(mul_cosh(wf.coeffs, 1), 6), Bs + sgn * 6.0 * wf.beta * p);
    add_scaled(acc, mul_cosh(mul_cosh(ddx(wf.coeffs, p), 1), 6), sgn);
    out.alpha = wf.alpha - 1.0;
    out.beta = wf.beta - 1.0;
  } else if (params.family == Family::ScarfII) {
    // W = A_s tanh(px) + B sech(px); the arctan prefactor contributes
    // gd_coeff*(p/2) sech(px) to the log-derivative.
    const double Bsech = ladder.stage.B_k;
    add_scaled(acc, mul_sinh(wf.coeffs, 1), As + sgn * wf.alpha * p);
    add_scaled(acc, wf.coeffs, Bsech + sgn * wf.gd_coeff * p / 2.0);
    add_scaled(acc, mul_cosh(ddx(wf.coeffs, p), 1), sgn);
    out.alpha = wf.alpha - 1.0;
    out.beta = 0.0;
  } else {
    throw std::domain_error("ladder algebra is defined for tanh6 and scarf2 only");
  }

  drop_exact_zeros(acc);
  out.coeffs = std::move(acc);
  return out;
}

ExactWavefunction derivative(const ExactWavefunction& wf) {
  const double p = wf.p;
  ExactWavefunction out;
  out.p = p;
  out.scale = wf.scale;
  out.gd_coeff = wf.gd_coeff;
  Coeffs acc;
  if (wf.beta != 0.0) {
    add_scaled(acc, mul_cosh(mul_sinh(wf.coeffs, 1), 6), wf.alpha * p);
    add_scaled(acc, mul_sinh(mul_cosh(wf.coeffs, 1), 6), 6.0 * wf.beta * p);
    add_scaled(acc, mul_cosh(wf.coeffs, 6), wf.gd_coeff * p / 2.0);
    add_scaled(acc, mul_cosh(mul_cosh(ddx(wf.coeffs, p), 1), 6), 1.0);
    out.beta = wf.beta - 1.0;
  } else {
    add_scaled(acc, mul_sinh(wf.coeffs, 1), wf.alpha * p);
    add_scaled(acc, wf.coeffs, wf.gd_coeff * p / 2.0);
    add_scaled(acc, mul_cosh(ddx(wf.coeffs, p), 1), 1.0);
    out.beta = 0.0;
  }
  out.alpha = wf.alpha - 1.0;
  drop_exact_zeros(acc);
  out.coeffs = std::move(acc);
  return out;
}

double evaluate(const ExactWavefunction& wf, double x) {
  if (wf.coeffs.empty()) return 0.0;
  const double t = wf.p * x;

  // Pull the dominant Laurent exponent out so the sum stays O(1).
  double kt_max = -std::numeric_limits<double>::infinity();
  for (const auto& [k, v] : wf.coeffs) {
    if (v == 0.0) continue;
    kt_max = std::max(kt_max, k * t);
  }
  if (!std::isfinite(kt_max)) return 0.0;

  double s = 0.0;
  for (const auto& [k, v] : wf.coeffs) s += v * std::exp(k * t - kt_max);

  const double log_pref = wf.alpha * log_cosh(t) + wf.beta * log_cosh(6.0 * t) +
                          wf.gd_coeff * gd_half(t) + kt_max;
  if (log_pref < -745.0) return 0.0;  // graceful underflow
  return wf.scale * std::exp(log_pref) * s;
}

double derivative2(const ExactWavefunction& wf, double x) {
  return evaluate(derivative(derivative(wf)), x);
}

double decay_rate(const ExactWavefunction& wf) {
  const double base = wf.alpha + 6.0 * wf.beta;
  const double plus = wf.p * (base + wf.max_degree());
  const double minus = wf.p * (base - wf.min_degree());
  return std::max(plus, minus);
}

namespace {

double node_scan_step(const ExactWavefunction& wf) {
  const int fastest = std::max({7, wf.max_degree(), -wf.min_degree()});
  const double period = 3.14159265358979323846 / (wf.p * fastest);
  return period / 8.0;
}

}  // namespace

std::vector<double> node_positions(const ExactWavefunction& wf, double a, double b) {
  if (!(b > a)) throw std::invalid_argument("node search domain must satisfy a < b");
  const double step = node_scan_step(wf);
  const long npts = std::min(500000L, static_cast<long>(std::ceil((b - a) / step)) + 1);
  const double h = (b - a) / static_cast<double>(npts);

  std::vector<double> nodes;
  double x_prev = a;
  double f_prev = evaluate(wf, a);
  for (long i = 1; i <= npts; ++i) {
    const double x = a + i * h;
    const double f = evaluate(wf, x);
    if (f_prev != 0.0 && f != 0.0 && std::signbit(f) != std::signbit(f_prev)) {
      double lo = x_prev, hi = x, flo = f_prev;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = evaluate(wf, mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if (std::signbit(fm) == std::signbit(flo)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      nodes.push_back(0.5 * (lo + hi));
    }
    if (f != 0.0) {
      x_prev = x;
      f_prev = f;
    }
  }
  return nodes;
}

int node_count(const ExactWavefunction& wf, double a, double b) {
  return static_cast<int>(node_positions(wf, a, b).size());
}

namespace {

// Abscissa beyond which |w1*w2| is negligible against the reference magnitude.
double tail_cutoff(const ExactWavefunction& w1, const ExactWavefunction& w2,
                   double ref_mag) {
  const double r1 = decay_rate(w1), r2 = decay_rate(w2);
  const double r = -(r1 + r2);  // > 0 for normalizable operands
  double X = std::max({20.0 / w1.p, 20.0 / w2.p, 45.0 / r});
  const double floor_mag = 1e-15 * (ref_mag + std::numeric_limits<double>::min());
  for (int i = 0; i < 200; ++i) {
    const double v = std::abs(evaluate(w1, X) * evaluate(w2, X)) +
                     std::abs(evaluate(w1, -X) * evaluate(w2, -X));
    if (v / r < floor_mag * X) break;
    X *= 1.25;
  }
  return X;
}

double probe_magnitude(const ExactWavefunction& w1, const ExactWavefunction& w2) {
  double m = 0.0;
  for (double x = -8.0 / w1.p; x <= 8.0 / w1.p; x += 0.25 / w1.p)
    m = std::max(m, std::abs(evaluate(w1, x) * evaluate(w2, x)));
  return m;
}

}  // namespace

double inner_product(const ExactWavefunction& wf1, const ExactWavefunction& wf2,
                     const SolverConfig& quad) {
  if (std::abs(wf1.p - wf2.p) > 1e-14 * std::max(1.0, std::abs(wf1.p)))
    throw std::invalid_argument("inner product operands disagree on p");
  if (decay_rate(wf1) >= 0.0 || decay_rate(wf2) >= 0.0)
    throw std::runtime_error("inner product diverges: non-normalizable operand");

  const auto p1 = wf1.parity(), p2 = wf2.parity();
  if (p1 && p2 && *p1 != *p2) return 0.0;

  const double mag = probe_magnitude(wf1, wf2);
  if (mag == 0.0) return 0.0;
  const double X = tail_cutoff(wf1, wf2, mag);
  (void)quad;
  // panel width resolves the fastest hyperbolic frequency of either operand;
  // the composite rule is then exact to machine precision, well inside the
  // 1e-10 orthogonality budget
  const int fastest = std::max({7, wf1.max_degree(), -wf1.min_degree(),
                                wf2.max_degree(), -wf2.min_degree()});
  const int panels =
      std::clamp(static_cast<int>(X * wf1.p * fastest), 64, 4000);
  auto f = [&](double x) { return evaluate(wf1, x) * evaluate(wf2, x); };
  return integrate_gl16(f, -X, X, panels);
}

ExactWavefunction build_state(const ModelParams& params, int n, const SolverConfig& cfg) {
  params.validate();
  if (n < 0) throw std::invalid_argument("level index must be nonnegative");
  if (params.family == Family::HarmonicOscillator)
    throw std::domain_error("build_state supports tanh6 and scarf2 only");

  ExactWavefunction wf = ground_state(params, stage(params, n));
  for (int k = n - 1; k >= 0; --k)
    wf = apply_ladder(params, wf, {stage(params, k), LadderDirection::Raising});

  const double rate = decay_rate(wf);
  if (rate >= 0.0) {
    std::ostringstream os;
    os << "state n=" << n << " rejected: decay rate " << rate
       << " >= 0 (non-normalizable; n_max=" << n_max(params) << ")";
    throw std::runtime_error(os.str());
  }

  const double norm2 = inner_product(wf, wf, cfg);
  if (!(norm2 > 0.0)) throw std::runtime_error("norm collapsed during construction");
  wf.scale /= std::sqrt(norm2);

  // Deterministic phase: leftmost interior extremum above 20% of the global
  // maximum is made positive.
  const double L = std::max(10.0 / params.p, 4.0);
  const int M = 4000;
  double gmax = 0.0;
  std::vector<double> vals(2 * M + 1);
  for (int i = -M; i <= M; ++i) {
    vals[i + M] = evaluate(wf, i * L / M);
    gmax = std::max(gmax, std::abs(vals[i + M]));
  }
  for (int i = 1; i < 2 * M; ++i) {
    const double v = std::abs(vals[i]);
    if (v >= 0.2 * gmax && v >= std::abs(vals[i - 1]) && v >= std::abs(vals[i + 1])) {
      if (vals[i] < 0.0) wf.scale = -wf.scale;
      break;
    }
  }
  return wf;
}

double residual(const ExactWavefunction& wf, const ModelParams& params, double energy,
                const SolverConfig& quad) {
  const ExactWavefunction d2 = derivative(derivative(wf));
  const double mag0 = probe_magnitude(wf, wf);
  if (mag0 == 0.0) throw std::invalid_argument("residual of the zero function");
  const double X = tail_cutoff(wf, wf, mag0);

  auto num_f = [&](double x) {
    const double r =
        -evaluate(d2, x) + (reporting_potential(params, x) - energy) * evaluate(wf, x);
    return r * r;
  };
  auto den_f = [&](double x) {
    const double v = evaluate(wf, x);
    return v * v;
  };
  (void)quad;
  const int fastest =
      std::max({7, d2.max_degree(), -d2.min_degree()});
  const int panels = std::clamp(static_cast<int>(X * wf.p * fastest), 64, 4000);
  const double num = integrate_gl16(num_f, -X, X, panels);
  const double den = integrate_gl16(den_f, -X, X, panels);
  return std::sqrt(std::max(num, 0.0) / den);
}

}  // namespace sip
