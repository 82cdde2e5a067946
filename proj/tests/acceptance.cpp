// Acceptance suite: six scenario gates, one per command-line argument (1-6),
// or all when run bare. Prints one [PASS]/[FAIL] line per criterion with the
// measured values. The second argument is the path to the CLI binary
// (criteria 1 and 2 drive the real executable end to end).

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "sip/config.hpp"
#include "sip/models.hpp"
#include "sip/report.hpp"
#include "sip/solvers.hpp"
#include "sip/validate.hpp"

namespace {

using Clock = std::chrono::steady_clock;

std::string g_cli_path;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Tally {
  int pass = 0, fail = 0;
  void sub(bool ok, const std::string& what) {
    std::printf("    %s %s\n", ok ? "[ok]  " : "[FAIL]", what.c_str());
    (ok ? pass : fail)++;
  }
};

void report(int id, const char* title, bool ok, const std::string& note = "") {
  std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", id, title,
              note.empty() ? "" : " -- ", note.c_str());
}

std::string run_cli(const std::string& args, int* exit_code) {
  const std::string cmd = g_cli_path + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    *exit_code = -1;
    return "";
  }
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
  *exit_code = pclose(pipe);
  return out;
}

// parse "  n   E   E_unshifted" rows and the "# n_max=... asymptote=..." header
struct SpectrumOut {
  std::vector<double> levels;
  int nmax = -1;
  double asymptote = 0.0;
};

SpectrumOut parse_spectrum(const std::string& text) {
  SpectrumOut s;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.rfind("#", 0) == 0) {
      const auto nm = line.find("n_max=");
      if (nm != std::string::npos) s.nmax = std::atoi(line.c_str() + nm + 6);
      const auto as = line.find("asymptote=");
      if (as != std::string::npos) s.asymptote = std::atof(line.c_str() + as + 10);
      continue;
    }
    std::istringstream ls(line);
    int n;
    double e, eu;
    if (ls >> n >> e >> eu) s.levels.push_back(e);
  }
  return s;
}

bool criterion1() {
  const auto t0 = Clock::now();
  int rc = 0;
  const std::string out = run_cli("spectrum", &rc);
  const double dt = seconds_since(t0);
  const SpectrumOut s = parse_spectrum(out);
  const double want[9] = {49.1225, 142.835,  224.542, 294.245, 351.943,
                          397.635, 431.323,  453.005, 462.683};
  Tally t;
  t.sub(rc == 0, "spectrum exits 0");
  t.sub(s.levels.size() == 9, "nine levels printed (got " +
                                  std::to_string(s.levels.size()) + ")");
  if (s.levels.size() == 9)
    for (int n = 0; n < 9; ++n) {
      std::ostringstream os;
      os << "level " << n << " = " << s.levels[n] << " vs " << want[n];
      t.sub(std::abs(s.levels[n] - want[n]) <= 5e-4 + 1e-9, os.str());
    }
  t.sub(s.nmax == 8, "n_max = 8 (got " + std::to_string(s.nmax) + ")");
  t.sub(std::abs(s.asymptote - 463.245) <= 1e-3,
        "asymptote 463.245 (got " + std::to_string(s.asymptote) + ")");
  t.sub(dt < 1.0, "runtime " + std::to_string(dt) + " s < 1 s");
  report(1, "exact tanh6 spectrum via the CLI", t.fail == 0);
  return t.fail == 0;
}

bool criterion2() {
  const auto t0 = Clock::now();
  int rc = 0;
  const std::string out = run_cli("spectrum --family scarf2 --A 7 --B 4 --p 1", &rc);
  const double dt = seconds_since(t0);
  const SpectrumOut s = parse_spectrum(out);
  const double want[7] = {0, 13, 24, 33, 40, 45, 48};
  Tally t;
  t.sub(rc == 0, "spectrum exits 0");
  t.sub(s.levels.size() == 7, "seven levels printed (got " +
                                  std::to_string(s.levels.size()) + ")");
  if (s.levels.size() == 7)
    for (int n = 0; n < 7; ++n) {
      std::ostringstream os;
      os << "level " << n << " = " << s.levels[n];
      t.sub(std::abs(s.levels[n] - want[n]) <= 1e-9, os.str());
    }
  t.sub(s.nmax == 6, "n_max = 6 (got " + std::to_string(s.nmax) + ")");
  t.sub(dt < 1.0, "runtime " + std::to_string(dt) + " s < 1 s");
  report(2, "exact scarf2 spectrum via the CLI", t.fail == 0);
  return t.fail == 0;
}

bool criterion3() {
  using namespace sip;
  const auto t0 = Clock::now();
  const ModelParams m = ModelParams::tanh6(24.0, 0.35);
  const SolverConfig cfg = resolve_config(m);
  Tally t;

  const double nde[6] = {49.1225, 142.835, 227.456, 302.920, 369.135, 425.962};
  const auto fd = fd_spectrum(m, cfg, 6);
  for (int k = 0; k < 6; ++k) {
    std::ostringstream os;
    os << "fd[" << k << "] = " << fd[k] << " vs " << nde[k];
    t.sub(std::abs(fd[k] - nde[k]) / nde[k] <= 0.005, os.str());
  }

  const double wkb[6] = {50.205, 143.826, 228.356, 303.730, 369.859, 426.605};
  for (int k = 0; k < 6; ++k) {
    const double e = wkb_energy(m, k, cfg);
    std::ostringstream os;
    os << "wkb[" << k << "] = " << e << " vs " << wkb[k];
    t.sub(std::abs(e - wkb[k]) / wkb[k] <= 0.003, os.str());
  }

  const double swkb[6] = {49.1265, 142.839, 227.464, 302.936, 369.163, 426.008};
  for (int k = 0; k < 6; ++k) {
    const double e = swkb_energy(m, k, cfg);
    std::ostringstream os;
    os << "swkb[" << k << "] = " << e << " vs " << swkb[k];
    // k = 0 returns the analytically exact 49.1225, inside the band anyway
    t.sub(std::abs(e - swkb[k]) / swkb[k] <= 0.003, os.str());
  }

  const double dt = seconds_since(t0);
  t.sub(dt < 120.0, "runtime " + std::to_string(dt) + " s < 120 s");
  report(3, "numerical columns within their reference bands", t.fail == 0);
  return t.fail == 0;
}

bool criterion4() {
  using namespace sip;
  const ModelParams osc = ModelParams::oscillator(1.0);
  const SolverConfig cfg = resolve_config(osc);
  Tally t;
  const auto fd = fd_spectrum(osc, cfg, 6);
  for (int n = 0; n <= 5; ++n) {
    const double want = 2.0 * n + 1.0;
    t.sub(std::abs(fd[n] - want) <= 1e-3, "fd oscillator n=" + std::to_string(n));
    t.sub(std::abs(shooting_solve(osc, cfg, n) - want) <= 1e-3,
          "shooting oscillator n=" + std::to_string(n));
    t.sub(std::abs(wkb_energy(osc, n, cfg) - want) <= 1e-6,
          "wkb oscillator n=" + std::to_string(n));
    t.sub(std::abs(swkb_energy(osc, n, cfg) - want) <= 1e-6,
          "swkb oscillator n=" + std::to_string(n));
  }
  SolverConfig rbase = cfg;
  rbase.grid_points = 2000;
  bool order_ok = false;
  double order = 0.0;
  try {
    order = richardson_check(osc, 0, rbase);
    order_ok = order >= 1.9 && order <= 2.1;
  } catch (const std::exception&) {
  }
  t.sub(order_ok, "richardson order " + std::to_string(order) + " in [1.9, 2.1]");
  report(4, "all four solvers recover the oscillator", t.fail == 0);
  return t.fail == 0;
}

bool criterion5() {
  using namespace sip;
  Tally t;
  for (const ModelParams& m :
       {ModelParams::tanh6(24.0, 0.35), ModelParams::scarf2(7.0, 4.0, 1.0)}) {
    ValidateOptions vo;
    vo.run_oracle_block = false;
    const auto report_ = validate_all(m, resolve_config(m), vo);
    for (const auto& c : report_.checks) {
      std::ostringstream os;
      os << family_name(m.family) << ": " << c.name << " (measured " << c.measured
         << ", bound " << c.bound << ")";
      t.sub(c.pass, os.str());
    }
  }
  const bool ok = t.fail == 0;
  report(5, "full invariant suite, both families", ok,
         ok ? ""
            : "the tanh/tanh-6 parameter chain is exactly shape invariant only at "
              "its first step, so the stage>=1 constancy, the n>=2 residuals/"
              "orthonormality and the intertwining checks fail by construction; "
              "see the validation report and README");
  return ok;
}

bool criterion6() {
  using namespace sip;
  const ModelParams m = ModelParams::tanh6(24.0, 0.35);
  const SolverConfig cfg = resolve_config(m);
  TableOptions opts;
  opts.replicate_above_asymptote = true;
  const auto rows = build_table(m, cfg, opts);
  const double v = asymptote(m);
  int flagged = 0;
  double worst = 1.0;
  for (const auto& r : rows)
    for (Method mm : kMethodOrder) {
      const auto& c = r.cell(mm);
      if (!c.value) continue;
      if (c.flag == CellFlag::AboveAsymptote || c.flag == CellFlag::OnAsymptote) {
        ++flagged;
        worst = std::min(worst, 1.0 - std::abs(*c.value - v) / v);
      }
    }
  Tally t;
  t.sub(flagged >= 1, "at least one state flagged on/above the asymptote (got " +
                          std::to_string(flagged) + ")");
  t.sub(flagged >= 1 && (1.0 - worst) <= 0.002,
        "flagged values within 0.2% of 463.245");
  report(6, "asymptote-artifact replication", t.fail == 0);
  return t.fail == 0;
}

}  // namespace

int main(int argc, char** argv) {
  int which = 0;
  if (argc > 1) which = std::atoi(argv[1]);
  g_cli_path = (argc > 2) ? argv[2] : "./tools/sip";

  bool ok = true;
  auto run = [&](int id, bool (*fn)()) {
    if (which == 0 || which == id) ok = fn() && ok;
  };
  run(1, criterion1);
  run(2, criterion2);
  run(3, criterion3);
  run(4, criterion4);
  run(5, criterion5);
  run(6, criterion6);
  return ok ? 0 : 1;
}
