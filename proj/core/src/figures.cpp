#include "sip/figures.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "sip/solvers.hpp"
#include "sip/wavefunction.hpp"

namespace sip {

namespace {

// Deterministic display phase: the leftmost interior extremum above 20% of
// the trace maximum is made positive. Returns +1/-1.
double display_sign(const std::vector<double>& trace) {
  double gmax = 0.0;
  for (double v : trace) gmax = std::max(gmax, std::abs(v));
  if (gmax == 0.0) return 1.0;
  for (size_t i = 1; i + 1 < trace.size(); ++i) {
    const double v = std::abs(trace[i]);
    if (v >= 0.2 * gmax && v >= std::abs(trace[i - 1]) && v >= std::abs(trace[i + 1]))
      return trace[i] < 0.0 ? -1.0 : 1.0;
  }
  return 1.0;
}

int trace_nodes(const std::vector<double>& trace, double floor_mag) {
  int nodes = 0;
  double prev = 0.0;
  for (double v : trace) {
    if (std::abs(v) <= floor_mag) continue;
    if (prev != 0.0 && std::signbit(v) != std::signbit(prev)) ++nodes;
    prev = v;
  }
  return nodes;
}

// Peak-normalize, scale to the display amplitude, fix the phase. ref_max = 0
// normalizes over the trace itself; numeric traces pass the full-grid maximum
// so a state living outside the plot window stays honestly flat.
std::vector<double> styled(const std::vector<double>& raw, double amplitude,
                           double ref_max = 0.0) {
  double gmax = ref_max;
  for (double v : raw) gmax = std::max(gmax, std::abs(v));
  std::vector<double> out(raw.size(), 0.0);
  if (gmax == 0.0) return out;
  const double s = display_sign(raw) * amplitude / gmax;
  for (size_t i = 0; i < raw.size(); ++i) out[i] = s * raw[i];
  return out;
}

double interp(const GridFunction& gf, double x) {
  if (gf.x.empty() || x <= gf.x.front() || x >= gf.x.back()) return 0.0;
  const auto it = std::upper_bound(gf.x.begin(), gf.x.end(), x);
  const size_t j = static_cast<size_t>(it - gf.x.begin());
  const double t = (x - gf.x[j - 1]) / (gf.x[j] - gf.x[j - 1]);
  return (1.0 - t) * gf.psi[j - 1] + t * gf.psi[j];
}

}  // namespace

PlotBundle build_figure(const ModelParams& params, const SolverConfig& cfg,
                        FigureKind kind) {
  params.validate();
  cfg.validate();
  if (kind == FigureKind::Fig1 && params.family != Family::Tanh6)
    throw std::domain_error("fig1 requires the tanh6 family");
  if (kind == FigureKind::Fig2 && params.family != Family::ScarfII)
    throw std::domain_error("fig2 requires the scarf2 family");

  const SpectrumExact spec = exact_spectrum(params);
  const int levels = spec.nmax + 1;

  PlotBundle bundle;
  double min_gap = std::numeric_limits<double>::infinity();
  for (int n = 0; n + 1 < levels; ++n)
    min_gap = std::min(min_gap, spec.levels[n + 1].second - spec.levels[n].second);
  if (!std::isfinite(min_gap)) min_gap = 1.0;
  bundle.amplitude = 0.35 * min_gap;

  // Window: generously past the outermost turning point of the top level.
  const double e_top = spec.levels.back().second;
  double x_turn = 2.0 / params.p;
  try {
    const TurningPoints tp = turning_points(params, e_top, cfg);
    if (!tp.points.empty())
      x_turn = std::max(std::abs(tp.points.front()), std::abs(tp.points.back()));
  } catch (const std::domain_error&) {
  }
  const double x_plot = 2.0 * x_turn + 1.5 / params.p;
  const int npts = 1200;
  bundle.x.resize(npts + 1);
  bundle.potential.resize(npts + 1);
  for (int i = 0; i <= npts; ++i) {
    bundle.x[i] = -x_plot + 2.0 * x_plot * i / npts;
    bundle.potential[i] = reporting_potential(params, bundle.x[i]);
  }
  for (const auto& [n, e] : spec.levels) bundle.levels.push_back(e);

  // Numeric eigenpairs, assigned to levels by nearest exact energy (the
  // solver may miss levels; those get the exact trace with a substitution flag).
  std::vector<double> fd_vals = fd_spectrum(params, cfg, levels);
  std::vector<int> numeric_at(levels, -1);
  const double v_cap = (params.family == Family::Tanh6)
                           ? asymptote(params) + cfg.energy_tol
                           : std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < fd_vals.size(); ++k) {
    if (fd_vals[k] > v_cap) continue;
    int slot = 0;
    double best = std::abs(fd_vals[k] - spec.levels[0].second);
    for (int n = 1; n < levels; ++n) {
      const double d = std::abs(fd_vals[k] - spec.levels[n].second);
      if (d < best) {
        best = d;
        slot = n;
      }
    }
    if (numeric_at[slot] >= 0 &&
        std::abs(fd_vals[numeric_at[slot]] - spec.levels[slot].second) <= best)
      continue;
    numeric_at[slot] = static_cast<int>(k);
  }

  for (int n = 0; n < levels; ++n) {
    StateTrace st;
    st.n = n;
    st.energy_exact = spec.levels[n].second;

    const ExactWavefunction wf = build_state(params, n, cfg);
    std::vector<double> raw(bundle.x.size());
    for (size_t i = 0; i < bundle.x.size(); ++i) raw[i] = evaluate(wf, bundle.x[i]);
    st.psi_exact = styled(raw, bundle.amplitude);
    st.nodes_exact = trace_nodes(st.psi_exact, 1e-6 * bundle.amplitude);

    if (numeric_at[n] >= 0) {
      const GridFunction gf = fd_eigenstate(params, cfg, numeric_at[n]);
      double full_max = 0.0;
      for (double v : gf.psi) full_max = std::max(full_max, std::abs(v));
      std::vector<double> num(bundle.x.size());
      for (size_t i = 0; i < bundle.x.size(); ++i) num[i] = interp(gf, bundle.x[i]);
      st.psi_numeric = styled(num, bundle.amplitude, full_max);
      st.energy_numeric = fd_vals[numeric_at[n]];
      st.substituted = false;
    } else {
      st.psi_numeric = st.psi_exact;
      st.energy_numeric = st.energy_exact;
      st.substituted = true;
    }
    st.nodes_numeric = trace_nodes(st.psi_numeric, 1e-6 * bundle.amplitude);

    // offset by the level for stacked display
    for (double& v : st.psi_exact) v += st.energy_exact;
    for (double& v : st.psi_numeric) v += st.energy_exact;
    bundle.states.push_back(std::move(st));
  }
  return bundle;
}

void write_figure_files(const PlotBundle& bundle, const std::string& out_dir,
                        const std::string& prefix, const std::string& provenance) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);

  auto open = [&](const std::string& name) {
    std::ofstream f(fs::path(out_dir) / name);
    if (!f) throw std::runtime_error("cannot write " + name + " under " + out_dir);
    return f;
  };

  {
    auto f = open(prefix + "_potential.dat");
    f << "# x V | " << provenance << "\n";
    for (size_t i = 0; i < bundle.x.size(); ++i)
      f << bundle.x[i] << " " << bundle.potential[i] << "\n";
    if (!f.good()) throw std::runtime_error("write failure: " + prefix + "_potential.dat");
  }
  {
    auto f = open(prefix + "_levels.dat");
    f << "# n E | " << provenance << "\n";
    for (size_t n = 0; n < bundle.levels.size(); ++n)
      f << n << " " << bundle.levels[n] << "\n";
    if (!f.good()) throw std::runtime_error("write failure: " + prefix + "_levels.dat");
  }
  {
    auto f = open(prefix + "_states.dat");
    f << "# x psi_exact psi_numeric | per-block header: n E_exact E_numeric "
         "substituted nodes_exact nodes_numeric | "
      << provenance << "\n";
    for (const StateTrace& st : bundle.states) {
      f << "# state n=" << st.n << " E_exact=" << st.energy_exact
        << " E_numeric=" << st.energy_numeric
        << " substituted=" << (st.substituted ? 1 : 0)
        << " nodes_exact=" << st.nodes_exact << " nodes_numeric=" << st.nodes_numeric
        << "\n";
      for (size_t i = 0; i < bundle.x.size(); ++i)
        f << bundle.x[i] << " " << st.psi_exact[i] << " " << st.psi_numeric[i] << "\n";
      f << "\n";
    }
    if (!f.good()) throw std::runtime_error("write failure: " + prefix + "_states.dat");
  }
}

}  // namespace sip
