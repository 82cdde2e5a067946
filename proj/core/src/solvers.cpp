#include "sip/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sip/quadrature.hpp"

namespace sip {

namespace {

constexpr double kPi = 3.14159265358979323846;

double grid_min_potential(const ModelParams& params, const SolverConfig& cfg) {
  double vmin = std::numeric_limits<double>::infinity();
  const int n = std::min(cfg.grid_points, 20000);
  for (int i = 0; i <= n; ++i) {
    const double x = -cfg.half_width + 2.0 * cfg.half_width * i / n;
    vmin = std::min(vmin, reporting_potential(params, x));
  }
  return vmin;
}

// x at which the reporting potential attains its minimum (rightmost on ties).
double matching_point(const ModelParams& params, const SolverConfig& cfg) {
  switch (params.family) {
    case Family::Tanh6:
    case Family::HarmonicOscillator:
      return 0.0;  // unique minimum at the origin
    case Family::ScarfII: {
      double best_x = 0.0, best_v = std::numeric_limits<double>::infinity();
      const int n = 4000;
      for (int i = 0; i <= n; ++i) {
        const double x = -cfg.half_width + 2.0 * cfg.half_width * i / n;
        const double v = reporting_potential(params, x);
        if (v <= best_v) {
          best_v = v;
          best_x = x;
        }
      }
      return best_x;
    }
  }
  return 0.0;
}

// Search ceiling for bound-state energies on the truncated domain.
double energy_cap(const ModelParams& params, const SolverConfig& cfg,
                  bool allow_above_asymptote) {
  const double wall = std::min(reporting_potential(params, -cfg.half_width),
                               reporting_potential(params, cfg.half_width));
  if (params.family == Family::Tanh6) {
    const double v = asymptote(params);
    return allow_above_asymptote ? 1.05 * v + 1.0 : v - 1e-9 * (1.0 + v);
  }
  return wall - 1e-9 * (1.0 + std::abs(wall));
}

// Potential sampled once on the shooting grid; the Numerov sweeps are the hot
// path and must not re-evaluate the transcendentals per step.
struct ShootingGrid {
  int N = 0;
  double h = 0.0;
  double half_width = 0.0;
  std::vector<double> v;  // v[i] = V(-c + i h), i = 0..N

  ShootingGrid(const ModelParams& params, const SolverConfig& cfg) {
    N = cfg.grid_points;
    half_width = cfg.half_width;
    h = 2.0 * cfg.half_width / N;
    v.resize(N + 1);
    for (int i = 0; i <= N; ++i)
      v[i] = reporting_potential(params, -cfg.half_width + i * h);
  }
};

struct NumerovSweep {
  int nodes = 0;
  // solution values around the matching index, scale-normalized
  double at_m_minus = 0.0, at_m = 0.0, at_m_plus = 0.0;
};

// Numerov for psi'' = g psi, g = V - E, from one wall to just past the
// matching index (or across the whole domain when match_index < 0). The
// solution is renormalized whenever it grows past 1e100; the sign structure
// (and hence the node count) is preserved.
NumerovSweep numerov_sweep(const ShootingGrid& grid, double energy, bool from_left,
                           int match_index) {
  const int N = grid.N;
  const double h12 = grid.h * grid.h / 12.0;
  auto g = [&](int i) { return grid.v[i] - energy; };

  NumerovSweep sweep;
  const int i0 = from_left ? 0 : N;
  const int di = from_left ? 1 : -1;
  const int i_end = (match_index < 0) ? (from_left ? N : 0)
                                      : match_index + (from_left ? 1 : -1);

  double psi_prev = 0.0;  // wall value
  double psi = 1e-10;     // first interior step
  double g_prev = g(i0);
  double g_cur = g(i0 + di);
  int i = i0 + di;
  auto record = [&](int idx, double val) {
    if (idx == match_index - 1) sweep.at_m_minus = val;
    if (idx == match_index) sweep.at_m = val;
    if (idx == match_index + 1) sweep.at_m_plus = val;
  };
  record(i, psi);
  while (i != i_end) {
    const int i_next = i + di;
    const double g_next = g(i_next);
    const double psi_next = (2.0 * psi * (1.0 + 5.0 * h12 * g_cur) -
                             psi_prev * (1.0 - h12 * g_prev)) /
                            (1.0 - h12 * g_next);
    if (psi != 0.0 && psi_next != 0.0 && i_next != N && i_next != 0 &&
        std::signbit(psi_next) != std::signbit(psi))
      ++sweep.nodes;
    psi_prev = psi;
    psi = psi_next;
    g_prev = g_cur;
    g_cur = g_next;
    i = i_next;
    record(i, psi);
    const double mag = std::abs(psi);
    if (mag > 1e100) {
      psi /= mag;
      psi_prev /= mag;
      sweep.at_m_minus /= mag;
      sweep.at_m /= mag;
      sweep.at_m_plus /= mag;
    }
  }
  return sweep;
}

int count_below_on(const ShootingGrid& grid, double energy) {
  return numerov_sweep(grid, energy, true, -1).nodes;
}

// Scale-invariant Wronskian defect of the two matched half-solutions.
double matching_defect(const ShootingGrid& grid, double energy, int match_index) {
  const NumerovSweep L = numerov_sweep(grid, energy, true, match_index);
  const NumerovSweep R = numerov_sweep(grid, energy, false, match_index);
  const double sl =
      std::max({std::abs(L.at_m_minus), std::abs(L.at_m), std::abs(L.at_m_plus)});
  const double sr =
      std::max({std::abs(R.at_m_minus), std::abs(R.at_m), std::abs(R.at_m_plus)});
  if (sl == 0.0 || sr == 0.0) return 0.0;
  const double lm = L.at_m / sl, lp = (L.at_m_plus - L.at_m_minus) / sl;
  const double rm = R.at_m / sr, rp = (R.at_m_plus - R.at_m_minus) / sr;
  return lp * rm - rp * lm;
}

}  // namespace

std::vector<double> fd_spectrum(const ModelParams& params, const SolverConfig& cfg,
                                int m) {
  params.validate();
  cfg.validate();
  if (m == 0) return {};
  if (m < 0 || m > cfg.grid_points / 4)
    throw std::invalid_argument("requested level count exceeds grid_points/4");
  const TridiagonalOperator op = discretize_hamiltonian(params, cfg);
  return lowest_eigenvalues(op, m);
}

GridFunction fd_eigenstate(const ModelParams& params, const SolverConfig& cfg, int k) {
  params.validate();
  cfg.validate();
  const TridiagonalOperator op = discretize_hamiltonian(params, cfg);
  const double lambda = eigenvalue_by_index(op, k);
  GridFunction gf;
  gf.half_width = cfg.half_width;
  gf.h = op.h;
  gf.psi = eigenvector(op, lambda, cfg.max_iter);
  gf.x.resize(gf.psi.size());
  for (size_t i = 0; i < gf.x.size(); ++i)
    gf.x[i] = -cfg.half_width + (static_cast<int>(i) + 1) * op.h;
  return gf;
}

TurningPoints turning_points(const ModelParams& params, double energy,
                             const SolverConfig& cfg) {
  params.validate();
  cfg.validate();
  const double c = cfg.half_width;
  const int n = std::max(cfg.grid_points, 2000);
  auto f = [&](double x) { return reporting_potential(params, x) - energy; };

  TurningPoints tp;
  double x_prev = -c;
  double f_prev = f(x_prev);
  for (int i = 1; i <= n; ++i) {
    const double x = -c + 2.0 * c * i / n;
    const double fx = f(x);
    if ((f_prev < 0.0) != (fx < 0.0)) {
      double lo = x_prev, hi = x, flo = f_prev;
      while (hi - lo > cfg.root_tol * std::max(1.0, std::abs(lo))) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      tp.points.push_back(0.5 * (lo + hi));
    }
    x_prev = x;
    f_prev = fx;
  }

  if (tp.points.empty()) {
    if (f(-c) < 0.0) {
      tp.outer_open = true;  // allowed everywhere on the truncated domain
      return tp;
    }
    throw std::domain_error("no classically allowed region at this energy");
  }
  for (size_t i = 0; i + 1 < tp.points.size(); ++i) {
    const double mid = 0.5 * (tp.points[i] + tp.points[i + 1]);
    if (f(mid) < 0.0) tp.allowed.emplace_back(tp.points[i], tp.points[i + 1]);
  }
  tp.outer_open = (f(-c) < 0.0) || (f(c) < 0.0);
  return tp;
}

int shooting_count_below(const ModelParams& params, const SolverConfig& cfg,
                         double energy) {
  params.validate();
  cfg.validate();
  const ShootingGrid grid(params, cfg);
  return count_below_on(grid, energy);
}

double shooting_solve(const ModelParams& params, const SolverConfig& cfg, int n,
                      bool allow_above_asymptote) {
  params.validate();
  cfg.validate();
  if (n < 0) throw std::invalid_argument("level index must be nonnegative");

  const ShootingGrid grid(params, cfg);
  const double xm = matching_point(params, cfg);
  const int match_index = std::clamp(
      static_cast<int>(std::lround((xm + cfg.half_width) / grid.h)), 5, grid.N - 5);

  const double vmin = *std::min_element(grid.v.begin(), grid.v.end());
  double lo = vmin + 1e-9 * (1.0 + std::abs(vmin));
  double hi = energy_cap(params, cfg, allow_above_asymptote);
  if (count_below_on(grid, hi) <= n) {
    std::ostringstream os;
    os << "shooting bracket failure: fewer than " << (n + 1)
       << " states below the search ceiling " << hi;
    throw std::runtime_error(os.str());
  }

  // Phase 1: bisect on the node count until [lo, hi] brackets exactly the
  // n -> n+1 transition and the matching defect changes sign across it.
  int c_lo = count_below_on(grid, lo);
  int c_hi = count_below_on(grid, hi);
  for (int it = 0; it < 240; ++it) {
    const bool window_ok = (c_lo == n) && (c_hi == n + 1);
    if (window_ok) {
      const double dlo = matching_defect(grid, lo, match_index);
      const double dhi = matching_defect(grid, hi, match_index);
      if ((dlo < 0.0) != (dhi < 0.0)) break;
    }
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) {
      // bracket collapsed to one representable number while still holding the
      // n-th state: a degenerate (or near-degenerate) cluster; that number is
      // the eigenvalue to machine precision
      if (c_lo <= n && n < c_hi) return mid;
      throw std::runtime_error("shooting: node-count window collapsed");
    }
    const int c_mid = count_below_on(grid, mid);
    if (c_mid <= n) {
      lo = mid;
      c_lo = c_mid;
    } else {
      hi = mid;
      c_hi = c_mid;
    }
  }

  // Phase 2: bisection on the defect sign inside the window.
  double dlo = matching_defect(grid, lo, match_index);
  for (int it = 0; it < 120; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double dm = matching_defect(grid, mid, match_index);
    if (dm == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((dm < 0.0) == (dlo < 0.0)) {
      lo = mid;
      dlo = dm;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-14 * std::max(1.0, std::abs(mid))) break;
  }
  const double best = 0.5 * (lo + hi);
  const double defect = matching_defect(grid, best, match_index);
  if (std::abs(defect) > std::max(cfg.root_tol, 1e-7)) {
    std::ostringstream os;
    os << "shooting: matching defect " << defect << " above tolerance at E=" << best;
    throw std::runtime_error(os.str());
  }
  return best;
}

namespace {

// The classically allowed interval containing the potential minimum.
std::pair<double, double> innermost_allowed(const TurningPoints& tp, double x_ref,
                                            bool* degraded) {
  if (degraded) *degraded = tp.count() > 2;
  for (const auto& [l, r] : tp.allowed)
    if (l <= x_ref && x_ref <= r) return {l, r};
  if (!tp.allowed.empty()) return tp.allowed.front();
  throw std::runtime_error("no closed classically allowed interval");
}

double bisect_monotone(const std::function<double(double)>& s, double target, double lo,
                       double hi, int iters) {
  for (int it = 0; it < iters; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (s(mid) < target)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-11 * std::max(1.0, std::abs(mid))) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double wkb_action(const ModelParams& params, double energy, const SolverConfig& cfg,
                  bool* degraded) {
  const TurningPoints tp = turning_points(params, energy, cfg);
  const auto [l, r] = innermost_allowed(tp, matching_point(params, cfg), degraded);
  auto f = [&](double x) {
    return std::sqrt(std::max(energy - reporting_potential(params, x), 0.0));
  };
  return integrate_tanh_sinh(f, l, r, 0.5 * cfg.quad_tol);
}

double wkb_energy(const ModelParams& params, int n, const SolverConfig& cfg,
                  bool* degraded) {
  params.validate();
  cfg.validate();
  if (n < 0) throw std::invalid_argument("level index must be nonnegative");
  const double target = (n + 0.5) * kPi;
  const double vmin = grid_min_potential(params, cfg);
  const double cap = energy_cap(params, cfg, false);

  double lo = vmin + 1e-9 * (1.0 + std::abs(vmin));
  double hi = std::min(vmin + 10.0, cap);
  bool reached_cap = false;
  for (int it = 0; it < 200; ++it) {
    if (wkb_action(params, hi, cfg, nullptr) >= target) break;
    if (reached_cap) {
      std::ostringstream os;
      os << "wkb bracket failure: action at the search ceiling stays below (n+1/2)pi "
         << "for n=" << n;
      throw std::runtime_error(os.str());
    }
    lo = hi;
    hi = std::min(vmin + (hi - vmin) * 2.0, cap);
    reached_cap = (hi == cap);
  }
  auto s = [&](double e) { return wkb_action(params, e, cfg, nullptr); };
  const double e = bisect_monotone(s, target, lo, hi, 120);
  if (degraded) wkb_action(params, e, cfg, degraded);
  return e;
}

double swkb_action(const ModelParams& params, double e_unshifted,
                   const SolverConfig& cfg) {
  params.validate();
  cfg.validate();
  const ParamStage s0 = stage(params, 0);
  auto w2 = [&](double x) {
    const double w = superpotential(params, s0, x);
    return w * w;
  };
  // zeros of e - W^2 bracketing the single well of W^2
  double x0 = 0.0;
  if (params.family == Family::ScarfII) x0 = std::asinh(-params.B / params.A) / params.p;
  auto scan_root = [&](double from, double to) {
    const int n = 40000;
    double xp = from, fp = w2(xp) - e_unshifted;
    for (int i = 1; i <= n; ++i) {
      const double x = from + (to - from) * i / n;
      const double fx = w2(x) - e_unshifted;
      if ((fp < 0.0) != (fx < 0.0)) {
        double lo = xp, hi = x, flo = fp;
        while (std::abs(hi - lo) > cfg.root_tol * std::max(1.0, std::abs(lo))) {
          const double mid = 0.5 * (lo + hi);
          const double fm = w2(mid) - e_unshifted;
          if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        return 0.5 * (lo + hi);
      }
      xp = x;
      fp = fx;
    }
    throw std::runtime_error("swkb: no zero of E - W^2 in the scan range");
  };
  const double xl = scan_root(x0, -cfg.half_width);
  const double xr = scan_root(x0, cfg.half_width);
  auto f = [&](double x) { return std::sqrt(std::max(e_unshifted - w2(x), 0.0)); };
  return integrate_tanh_sinh(f, xl, xr, 0.5 * cfg.quad_tol);
}

double swkb_energy(const ModelParams& params, int n, const SolverConfig& cfg) {
  params.validate();
  cfg.validate();
  if (n < 0) throw std::invalid_argument("level index must be nonnegative");
  const double shift = energy_shift(params);
  if (n == 0) return shift;  // zero action at the bottom of the W^2 well

  const double target = n * kPi;
  double cap;
  switch (params.family) {
    case Family::Tanh6:
      cap = asymptote(params, false);  // W^2 -> (A0+B0)^2
      break;
    case Family::ScarfII:
      cap = params.A * params.A;
      break;
    case Family::HarmonicOscillator: {
      const double w = params.omega * cfg.half_width;
      cap = w * w;
      break;
    }
    default:
      cap = 0.0;
  }
  cap -= 1e-9 * (1.0 + cap);
  if (swkb_action(params, cap, cfg) < target) {
    std::ostringstream os;
    os << "swkb bracket failure: action at the W^2 plateau stays below n*pi for n=" << n;
    throw std::runtime_error(os.str());
  }
  auto s = [&](double e) { return swkb_action(params, e, cfg); };
  const double e = bisect_monotone(s, target, 1e-12, cap, 120);
  return e + shift;
}

double richardson_order(double e_coarse, double e_mid, double e_fine) {
  const double d1 = e_coarse - e_mid;
  const double d2 = e_mid - e_fine;
  const double scale = std::max({1.0, std::abs(e_coarse), std::abs(e_fine)});
  if (std::abs(d1) < 1e-12 * scale || std::abs(d2) < 1e-12 * scale)
    throw std::runtime_error(
        "richardson: grid changes at the noise floor, order unreliable");
  const double ratio = d1 / d2;
  if (!(ratio > 1.0))
    throw std::runtime_error(
        "richardson: non-monotone eigenvalue sequence, order unreliable");
  return std::log2(ratio);
}

double richardson_check(const ModelParams& params, int n, const SolverConfig& cfg) {
  SolverConfig c2 = cfg, c4 = cfg;
  c2.grid_points = cfg.grid_points * 2;
  c4.grid_points = cfg.grid_points * 4;
  const double e1 = fd_spectrum(params, cfg, n + 1).back();
  const double e2 = fd_spectrum(params, c2, n + 1).back();
  const double e4 = fd_spectrum(params, c4, n + 1).back();
  return richardson_order(e1, e2, e4);
}

}  // namespace sip
