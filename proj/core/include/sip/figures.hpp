#ifndef SIP_FIGURES_HPP
#define SIP_FIGURES_HPP

// Plot data for the two reference figures: the potential curve, the exact
// level ladder, and per-level exact/numeric eigenfunction traces offset by
// their energies for stacked display. Emitted as plain columnar text; no
// rendering here.

#include <string>
#include <vector>

#include "sip/config.hpp"
#include "sip/models.hpp"

namespace sip {

enum class FigureKind {
  Fig1,  // tanh/tanh-6 potential with its ladder of states
  Fig2,  // Scarf II potential with its ladder of states
};

struct StateTrace {
  int n = 0;
  double energy_exact = 0.0;
  double energy_numeric = 0.0;  // equals energy_exact when substituted
  bool substituted = false;     // numeric solver missed this level; exact trace reused
  int nodes_exact = 0;
  int nodes_numeric = 0;
  std::vector<double> psi_exact;    // scaled, offset by the level energy
  std::vector<double> psi_numeric;  // same convention, sign-aligned
};

struct PlotBundle {
  std::vector<double> x;  // common grid for every trace
  std::vector<double> potential;
  std::vector<double> levels;
  std::vector<StateTrace> states;
  double amplitude;  // display amplitude: 0.35 * min level gap
};

// fig1 requires tanh6, fig2 requires scarf2; wrong family throws
// std::domain_error.
PlotBundle build_figure(const ModelParams& params, const SolverConfig& cfg,
                        FigureKind kind);

// Writes <prefix>_potential.dat, <prefix>_levels.dat, <prefix>_states.dat
// under out_dir; whitespace-delimited, header comment first line.
// Throws std::runtime_error on I/O failure.
void write_figure_files(const PlotBundle& bundle, const std::string& out_dir,
                        const std::string& prefix, const std::string& provenance);

}  // namespace sip

#endif
