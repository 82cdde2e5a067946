#include "sip/config.hpp"

#include <algorithm>
#include <stdexcept>

namespace sip {

void SolverConfig::validate() const {
  if (!(half_width > 0.0)) throw std::invalid_argument("half_width must be > 0");
  if (grid_points < 64) throw std::invalid_argument("grid_points must be >= 64");
  if (!(energy_tol > 0.0) || !(root_tol > 0.0) || !(quad_tol > 0.0))
    throw std::invalid_argument("tolerances must be > 0");
  if (max_iter <= 0) throw std::invalid_argument("max_iter must be > 0");
}

SolverConfig resolve_config(const ModelParams& params, SolverConfig base) {
  params.validate();
  SolverConfig cfg = base;
  if (cfg.half_width <= 0.0) {
    switch (params.family) {
      case Family::Tanh6: {
        // slowest decay among retained states: p + 5 B0/6 - 7 n_max p
        const double r_min = params.p + 5.0 * params.B0 / 6.0 - 7.0 * n_max(params) * params.p;
        cfg.half_width = std::max(18.0 / r_min, 30.0 / params.p);
        break;
      }
      case Family::ScarfII: {
        const double r_min = params.A - n_max(params) * params.p;
        cfg.half_width = std::max(18.0 / r_min, 30.0 / params.p);
        break;
      }
      case Family::HarmonicOscillator:
        cfg.half_width = 12.0;
        break;
    }
  }
  if (cfg.grid_points <= 0) {
    switch (params.family) {
      case Family::Tanh6:
        // the wide default domain needs a fine grid to keep the top of the
        // spectrum within the cross-method comparison bands
        cfg.grid_points = 24000;
        break;
      case Family::ScarfII:
        cfg.grid_points = 8000;
        break;
      case Family::HarmonicOscillator:
        cfg.grid_points = 4000;
        break;
    }
  }
  cfg.validate();
  return cfg;
}

}  // namespace sip
