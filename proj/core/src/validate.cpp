#include "sip/validate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "sip/solvers.hpp"
#include "sip/wavefunction.hpp"

namespace sip {

namespace {

CheckResult make(const std::string& name, double measured, double bound,
                 const std::string& detail = "") {
  CheckResult r;
  r.name = name;
  r.measured = measured;
  r.bound = bound;
  r.pass = measured <= bound;
  r.detail = detail;
  return r;
}

std::string level_tag(int n) {
  std::ostringstream os;
  os << "n=" << n;
  return os.str();
}

// Window containing every node of the retained states, with margin.
double node_window(const ModelParams& params, const SolverConfig& cfg) {
  const double e_top = exact_energy(params, n_max(params));
  double x_turn = 2.0 / params.p;
  try {
    const TurningPoints tp = turning_points(params, e_top, cfg);
    if (!tp.points.empty())
      x_turn = std::max(std::abs(tp.points.front()), std::abs(tp.points.back()));
  } catch (const std::domain_error&) {
  }
  return 1.5 * x_turn + 2.0 / params.p;
}

void check_closed_form_routes(std::vector<CheckResult>& out) {
  // E_n via the telescoped difference of squares vs the expanded product
  // form, over random admissible (B0, p) draws.
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> ub0(2.0, 60.0);
  double worst = 0.0;
  int draws = 0, levels_checked = 0;
  while (draws < 100) {
    const double B0 = ub0(rng);
    std::uniform_real_distribution<double> up(B0 / 80.0, B0 / 3.05);
    const double p = up(rng);
    ModelParams m = ModelParams::tanh6(B0, p);
    ++draws;
    for (int n = 0; n <= n_max(m); ++n) {
      const double c0 = 5.0 * B0 / 6.0 + p;
      const double cn = c0 - 7.0 * n * p;
      const double route_sq = c0 * c0 - cn * cn;
      const double route_prod = (7.0 / 3.0) * n * p * (5.0 * B0 + 3.0 * (2.0 - 7.0 * n) * p);
      const double lib = exact_energy(m, n, false);
      const double scale = std::max({1.0, std::abs(route_sq), std::abs(lib)});
      worst = std::max(worst, std::abs(route_sq - route_prod) / scale);
      worst = std::max(worst, std::abs(route_sq - lib) / scale);
      ++levels_checked;
    }
  }
  std::ostringstream os;
  os << "100 draws, " << levels_checked << " levels";
  out.push_back(make("closed-form energy: two algebraic routes agree", worst, 1e-12,
                     os.str()));
}

void check_oracle_solvers(std::vector<CheckResult>& out) {
  const ModelParams osc = ModelParams::oscillator(1.0);
  const SolverConfig cfg = resolve_config(osc);
  auto exact = [](int n) { return 2.0 * n + 1.0; };

  {
    double worst = 0.0;
    const auto fd = fd_spectrum(osc, cfg, 6);
    for (int n = 0; n < 6; ++n) worst = std::max(worst, std::abs(fd[n] - exact(n)));
    out.push_back(make("oracle: finite-difference levels vs (2n+1)", worst, 1e-3));
  }
  {
    double worst = 0.0;
    for (int n = 0; n < 6; ++n)
      worst = std::max(worst, std::abs(shooting_solve(osc, cfg, n) - exact(n)));
    out.push_back(make("oracle: shooting levels vs (2n+1)", worst, 1e-3));
  }
  {
    double worst = 0.0;
    for (int n = 0; n < 6; ++n)
      worst = std::max(worst, std::abs(wkb_energy(osc, n, cfg) - exact(n)));
    out.push_back(make("oracle: wkb levels vs (2n+1)", worst, 1e-6 * 4.0,
                       "quantization exact for the oscillator"));
  }
  {
    double worst = 0.0;
    for (int n = 0; n < 6; ++n)
      worst = std::max(worst, std::abs(swkb_energy(osc, n, cfg) - exact(n)));
    out.push_back(make("oracle: swkb levels vs (2n+1)", worst, 1e-6 * 4.0,
                       "rule exact for W = omega*x"));
  }
  {
    SolverConfig base = cfg;
    base.grid_points = 2000;
    double order = 0.0;
    std::string note;
    bool ok = true;
    try {
      order = richardson_check(osc, 0, base);
      ok = order >= 1.9 && order <= 2.1;
    } catch (const std::runtime_error& e) {
      ok = false;
      note = e.what();
    }
    CheckResult r;
    r.name = "oracle: richardson convergence order in [1.9, 2.1]";
    r.measured = order;
    r.bound = 2.1;
    r.pass = ok;
    r.detail = note;
    out.push_back(r);
  }
}

}  // namespace

bool ValidationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

ValidationReport validate_all(const ModelParams& params, const SolverConfig& cfg_in,
                              const ValidateOptions& opts) {
  ValidationReport report;
  auto& out = report.checks;

  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    CheckResult r;
    r.name = "parameter validity";
    r.pass = false;
    r.detail = e.what();
    out.push_back(r);
    return report;
  }
  out.push_back(make("parameter validity", 0.0, 0.0, "constraints hold"));

  const SolverConfig cfg = resolve_config(params, cfg_in);
  const int nm = n_max(params);
  const bool has_states = params.family != Family::HarmonicOscillator;

  {  // strict ordering, and (tanh6) every level below the asymptote
    double worst_gap = -1.0;
    for (int n = 0; n < nm; ++n)
      worst_gap = std::max(worst_gap,
                           exact_energy(params, n) - exact_energy(params, n + 1));
    out.push_back(make("levels strictly increasing", worst_gap, -1e-15,
                       "max E_n - E_{n+1}"));
    if (params.family == Family::Tanh6) {
      const double v = asymptote(params);
      double worst = -1e300;
      for (int n = 0; n <= nm; ++n)
        worst = std::max(worst, exact_energy(params, n) - v);
      out.push_back(make("levels below the asymptote", worst, -1e-12, "max E_n - v"));
    }
  }

  {  // telescoping of the level differences
    double worst = 0.0;
    double acc = 0.0;
    for (int n = 1; n <= nm; ++n) {
      acc += shape_invariance_constant(params, n - 1);
      const double e = exact_energy(params, n, false);
      worst = std::max(worst, std::abs(acc - e) / std::max(1.0, std::abs(e)));
    }
    out.push_back(make("telescoped level constants reproduce E_n", worst, 1e-12));
  }

  check_closed_form_routes(out);

  if (params.family == Family::Tanh6) {  // potential parity
    double worst = 0.0;
    for (int i = 0; i <= 500; ++i) {
      const double x = 20.0 / params.p * i / 500.0;
      worst = std::max(worst, std::abs(shifted_potential(params, x) -
                                       shifted_potential(params, -x)));
    }
    out.push_back(make("potential parity V(x) = V(-x)", worst, 1e-9));
  }

  {  // shape invariance: V_+(x, a_k) - V_-(x, a_{k+1}) constant and equal to C_k
    const double L = std::min(cfg.half_width, 16.0 / params.p);
    const int pts = 2001;
    for (int k = 0; k < nm; ++k) {
      const ParamStage sk = stage(params, k);
      const ParamStage sk1 = stage(params, k + 1);
      double mean = 0.0;
      std::vector<double> d(pts);
      for (int i = 0; i < pts; ++i) {
        const double x = -L + 2.0 * L * i / (pts - 1);
        d[i] = partner_potentials(params, sk, x).v_plus -
               partner_potentials(params, sk1, x).v_minus;
        mean += d[i];
      }
      mean /= pts;
      double var = 0.0;
      for (double v : d) var += (v - mean) * (v - mean);
      const double sd = std::sqrt(var / pts);
      const double ck = shape_invariance_constant(params, k);
      std::ostringstream detail;
      detail << "stage " << k << ": mean=" << mean << " C_k=" << ck;
      out.push_back(make("shape invariance constancy (stage " + std::to_string(k) + ")",
                         sd, 1e-9 * std::abs(mean), detail.str()));
      out.push_back(make("shape invariance mean equals C_k (stage " + std::to_string(k) + ")",
                         std::abs(mean - ck), 1e-9 * std::abs(ck), detail.str()));
    }
  }

  if (has_states) {
    {  // ground-state annihilation per stage
      double worst = 0.0;
      for (int k = 0; k <= nm; ++k) {
        const ParamStage sk = stage(params, k);
        const ExactWavefunction g = ground_state(params, sk);
        const double in_mag = g.max_abs_coeff();
        const ExactWavefunction lowered =
            apply_ladder(params, g, {sk, LadderDirection::Lowering});
        worst = std::max(worst, lowered.max_abs_coeff() / in_mag);
      }
      out.push_back(make("ground-state annihilation by the lowering operator", worst,
                         1e-12, "max residual coefficient, all stages"));
    }

    std::vector<ExactWavefunction> states;
    bool built_ok = true;
    try {
      for (int n = 0; n <= nm; ++n) states.push_back(build_state(params, n, cfg));
    } catch (const std::exception& e) {
      built_ok = false;
      CheckResult r;
      r.name = "state construction";
      r.pass = false;
      r.detail = e.what();
      out.push_back(r);
    }

    if (built_ok) {
      {  // residuals
        for (int n = 0; n <= nm; ++n) {
          double e = exact_energy(params, n);
          if (opts.inject_energy_fault != 0.0 && n == std::min(1, nm))
            e += opts.inject_energy_fault;
          const double res = residual(states[n], params, e, cfg);
          out.push_back(make("eigenstate residual (" + level_tag(n) + ")", res, 1e-8));
        }
      }
      {  // node theorem
        const double L = node_window(params, cfg);
        int bad = 0;
        std::ostringstream detail;
        for (int n = 0; n <= nm; ++n) {
          const int nodes = node_count(states[n], -L, L);
          if (nodes != n) {
            ++bad;
            detail << " " << level_tag(n) << "->" << nodes;
          }
        }
        out.push_back(make("node theorem: node_count(psi_n) = n", bad, 0.0,
                           bad ? detail.str() : "all levels"));
      }
      {  // orthonormality
        double worst = 0.0;
        for (int i = 0; i <= nm; ++i)
          for (int j = i; j <= nm; ++j) {
            const double g = inner_product(states[i], states[j], cfg);
            worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
          }
        out.push_back(make("orthonormality: Gram matrix is the identity", worst, 1e-8));
      }
      {  // intertwining: lowering at stage 0 maps psi_n onto the stage-1 chain
        const double L = node_window(params, cfg);
        for (int n = 1; n <= nm; ++n) {
          const ExactWavefunction lowered =
              apply_ladder(params, states[n], {stage(params, 0), LadderDirection::Lowering});
          ExactWavefunction partner = ground_state(params, stage(params, n));
          for (int k = n - 1; k >= 1; --k)
            partner = apply_ladder(params, partner, {stage(params, k), LadderDirection::Raising});
          // pointwise ratio spread over sample points away from nodes
          double rmin = 0.0, rmax = 0.0;
          int used = 0;
          double ref = 0.0;
          for (int j = 0; j < 20; ++j) {
            const double x = -0.45 * L + 0.9 * L * j / 19.0 + 0.0137 / params.p;
            const double den = evaluate(partner, x);
            const double num = evaluate(lowered, x);
            if (std::abs(den) < 1e-8 * (std::abs(num) + 1e-300)) continue;
            const double r = num / den;
            if (used == 0) {
              rmin = rmax = r;
              ref = std::abs(r);
            } else {
              rmin = std::min(rmin, r);
              rmax = std::max(rmax, r);
            }
            ++used;
          }
          const double spread = (used >= 8 && ref > 0.0) ? (rmax - rmin) / ref : 1.0;
          out.push_back(make("intertwining proportionality (" + level_tag(n) + ")",
                             spread, 1e-8,
                             "lowered psi_n vs stage-1 state, " + std::to_string(used) +
                                 " samples"));
        }
      }
      {  // normalizability frontier
        CheckResult r;
        r.name = "normalizability frontier rejects n_max + 1";
        try {
          (void)build_state(params, nm + 1, cfg);
          r.pass = false;
          r.detail = "state above the frontier was not rejected";
        } catch (const std::runtime_error& e) {
          r.pass = true;
          r.detail = e.what();
        }
        out.push_back(r);
      }
      if (params.family == Family::ScarfII) {
        // states factor through the bounded prefactor: fixed cosh exponent,
        // polynomial degree n
        double worst_alpha = 0.0;
        int worst_deg = 0;
        for (int n = 0; n <= nm; ++n) {
          worst_alpha = std::max(worst_alpha,
                                 std::abs(states[n].alpha + params.A / params.p));
          worst_deg = std::max(worst_deg, std::max(states[n].max_degree(),
                                                   -states[n].min_degree()) - n);
        }
        out.push_back(make("factorized form: cosh exponent fixed at -A/p", worst_alpha,
                           1e-9));
        out.push_back(make("factorized form: polynomial degree grows by one per level",
                           worst_deg, 0.0));
      }
    }
  }

  if (opts.run_oracle_block) check_oracle_solvers(out);
  return report;
}

std::string format_report(const ValidationReport& report) {
  std::ostringstream os;
  for (const CheckResult& c : report.checks) {
    os << (c.pass ? "[ ok ] " : "[FAIL] ") << c.name;
    os << "  measured=" << c.measured << " bound=" << c.bound;
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << "\n";
  }
  os << (report.all_pass() ? "all checks passed\n" : "one or more checks FAILED\n");
  return os.str();
}

}  // namespace sip
