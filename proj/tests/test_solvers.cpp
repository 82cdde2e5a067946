#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sip/config.hpp"
#include "sip/models.hpp"
#include "sip/solvers.hpp"

using namespace sip;

namespace {
const ModelParams kT = ModelParams::tanh6(24.0, 0.35);
const ModelParams kS = ModelParams::scarf2(7.0, 4.0, 1.0);
const ModelParams kO = ModelParams::oscillator(1.0);

// reference numerical columns (B0=24, p=0.35)
const double kNde[6] = {49.1225, 142.835, 227.456, 302.920, 369.135, 425.962};
const double kWkb[6] = {50.205, 143.826, 228.356, 303.730, 369.859, 426.605};
const double kSwkb[6] = {49.1265, 142.839, 227.464, 302.936, 369.163, 426.008};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_SUITE_BEGIN("solvers");

TEST_CASE("finite-difference spectrum reproduces the reference column") {
  const SolverConfig cfg = resolve_config(kT);
  const auto w = fd_spectrum(kT, cfg, 7);
  for (int k = 0; k < 6; ++k) CHECK(rel(w[k], kNde[k]) < 0.005);
  // the next state is boxed continuum right at the asymptote
  CHECK(rel(w[6], asymptote(kT)) < 0.002);
  CHECK(fd_spectrum(kT, cfg, 0).empty());
  CHECK_THROWS_AS((void)fd_spectrum(kT, cfg, cfg.grid_points), std::invalid_argument);
}

TEST_CASE("oscillator: all four methods recover (2n+1)") {
  const SolverConfig cfg = resolve_config(kO);
  const auto fd = fd_spectrum(kO, cfg, 6);
  for (int n = 0; n < 6; ++n) {
    const double want = 2.0 * n + 1.0;
    CHECK(std::abs(fd[n] - want) < 1e-3);
    CHECK(std::abs(shooting_solve(kO, cfg, n) - want) < 1e-3);
    CHECK(std::abs(wkb_energy(kO, n, cfg) - want) < 1e-6);
    CHECK(std::abs(swkb_energy(kO, n, cfg) - want) < 1e-6);
  }
  CHECK(std::abs(shooting_solve(kO, cfg, 3) - 7.0) < 1e-4);
}

TEST_CASE("shooting: reference levels and the outlier row documented") {
  const SolverConfig cfg = resolve_config(kT);
  CHECK(rel(shooting_solve(kT, cfg, 0), 49.1225) < 0.001);
  CHECK(rel(shooting_solve(kT, cfg, 1), 142.835) < 0.001);
  // our solver finds the true 4th level near 369.135; the reference table's
  // shooting entry 339.62 for that row is far outside our discrepancy band
  const double e4 = shooting_solve(kT, cfg, 4);
  CHECK(rel(e4, 369.135) < 0.005);
  CHECK(std::abs(e4 - 339.62) > 5.0);
}

TEST_CASE("shooting above the asymptote is opt-in") {
  const SolverConfig cfg = resolve_config(kT);
  const int below = shooting_count_below(kT, cfg, asymptote(kT) - 1e-9);
  CHECK(below == 6);
  CHECK_THROWS_AS((void)shooting_solve(kT, cfg, below), std::runtime_error);
  const double boxed = shooting_solve(kT, cfg, below, true);
  CHECK(boxed >= asymptote(kT));
  CHECK(rel(boxed, asymptote(kT)) < 0.002);
}

TEST_CASE("node-count sweep agrees with the matrix route") {
  const SolverConfig cfg = resolve_config(kT);
  const auto w = fd_spectrum(kT, cfg, 6);
  for (double e : {100.0, 250.0, 430.0}) {
    int fd_below = 0;
    for (double v : w)
      if (v < e) ++fd_below;
    CHECK(shooting_count_below(kT, cfg, e) == fd_below);
  }
}

TEST_CASE("finite difference and shooting agree level by level") {
  for (const ModelParams& m : {kT, kS, kO}) {
    const SolverConfig cfg = resolve_config(m);
    const auto w = fd_spectrum(m, cfg, 4);
    for (int n = 0; n <= 3; ++n)
      CHECK(std::abs(w[n] - shooting_solve(m, cfg, n)) < 10.0 * cfg.energy_tol);
  }
}

TEST_CASE("turning points: pair counts, symmetry, errors") {
  const SolverConfig cfg = resolve_config(kT);
  const TurningPoints low = turning_points(kT, 1.0, cfg);
  REQUIRE(low.count() == 2);
  CHECK(low.points[0] < 0.0);
  CHECK(low.points[1] > 0.0);
  CHECK(std::abs(low.points[0] + low.points[1]) < 1e-7);  // mirror images
  REQUIRE(low.allowed.size() == 1);
  CHECK_FALSE(low.outer_open);

  const TurningPoints high = turning_points(kT, 463.347, cfg);
  CHECK(high.count() == 4);
  CHECK(high.outer_open);  // allowed region reaches the walls above the asymptote

  CHECK_THROWS_AS((void)turning_points(kT, -1.0, cfg), std::domain_error);
}

TEST_CASE("wkb: reference column and degraded four-turning-point confidence") {
  const SolverConfig cfg = resolve_config(kT);
  CHECK(rel(wkb_energy(kT, 0, cfg), 50.205) < 0.002);
  CHECK(rel(wkb_energy(kT, 3, cfg), 303.730) < 0.002);
  for (int n = 0; n < 6; ++n) CHECK(rel(wkb_energy(kT, n, cfg), kWkb[n]) < 0.003);
  CHECK_THROWS_AS((void)wkb_energy(kT, 6, cfg), std::runtime_error);  // bracket exhausted

  bool degraded = false;
  (void)wkb_action(kT, 463.347, cfg, &degraded);
  CHECK(degraded);
  degraded = true;
  (void)wkb_action(kT, 200.0, cfg, &degraded);
  CHECK_FALSE(degraded);
}

TEST_CASE("wkb action is strictly increasing in energy") {
  const SolverConfig cfg = resolve_config(kT);
  double prev = 0.0;
  for (double e : {10.0, 50.0, 120.0, 240.0, 380.0, 440.0, 460.0}) {
    const double s = wkb_action(kT, e, cfg, nullptr);
    CHECK(s > prev);
    prev = s;
  }
}

TEST_CASE("swkb: shift-exact ground entry and the reference column") {
  const SolverConfig cfg = resolve_config(kT);
  CHECK(swkb_energy(kT, 0, cfg) == energy_shift(kT));  // zero action, exact
  CHECK(rel(swkb_energy(kT, 1, cfg), 142.839) < 0.002);
  CHECK(rel(swkb_energy(kT, 2, cfg), 227.464) < 0.002);
  for (int n = 1; n < 6; ++n) CHECK(rel(swkb_energy(kT, n, cfg), kSwkb[n]) < 0.003);
  CHECK_THROWS_AS((void)swkb_energy(kT, 7, cfg), std::runtime_error);
}

TEST_CASE("swkb is exact for the genuinely shape-invariant family") {
  const SolverConfig cfg = resolve_config(kS);
  for (int n = 1; n <= 6; ++n)
    CHECK(std::abs(swkb_energy(kS, n, cfg) - exact_energy(kS, n)) < 1e-3);
}

TEST_CASE("richardson convergence order") {
  SolverConfig cfg = resolve_config(kO);
  cfg.grid_points = 2000;
  const double ord = richardson_check(kO, 0, cfg);
  CHECK(ord > 1.9);
  CHECK(ord < 2.1);

  SolverConfig cfgT = resolve_config(kT);
  cfgT.grid_points = 6000;
  const double ordT = richardson_check(kT, 1, cfgT);
  CHECK(ordT > 1.9);
  CHECK(ordT < 2.1);

  // noise floor and non-monotone sequences are refused
  CHECK_THROWS_AS((void)richardson_order(5.0, 5.0 + 1e-15, 5.0), std::runtime_error);
  CHECK_THROWS_AS((void)richardson_order(1.0, 1.1, 1.3), std::runtime_error);
}

TEST_CASE("doubled domain leaves the levels in place") {
  SolverConfig cfg = resolve_config(kS);
  SolverConfig wide = cfg;
  wide.half_width = 2.0 * cfg.half_width;
  wide.grid_points = 2 * cfg.grid_points;  // fixed spacing
  const auto a = fd_spectrum(kS, cfg, 6);
  const auto b = fd_spectrum(kS, wide, 6);
  for (int n = 0; n < 6; ++n) CHECK(std::abs(a[n] - b[n]) < cfg.energy_tol);
}

TEST_SUITE_END();
