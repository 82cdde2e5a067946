// sip: spectra, comparison tables, figure data and invariant validation for
// the shape-invariant 1-D Schrodinger models (tanh/tanh-6, Scarf II, and the
// oscillator cross-check fixture).
//
// Exit codes: 0 success, 1 validation failure, 2 usage error, 3 I/O error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sip/config.hpp"
#include "sip/figures.hpp"
#include "sip/models.hpp"
#include "sip/report.hpp"
#include "sip/validate.hpp"

namespace {

struct RunConfig {
  std::string family = "tanh6";
  double B0 = 24.0;
  double p = 0.0;  // 0 = family default: 0.35 for tanh6, 1 for scarf2
  double A = 7.0;
  double B = 4.0;
  double omega = 1.0;

  double half_width = 0.0;  // 0 = per-family default
  int grid = 0;             // 0 = per-family default
  double energy_tol = 0.05;
  double root_tol = 1e-10;
  double quad_tol = 1e-6;
  int max_iter = 200;

  std::string out_dir = ".";
  std::string format = "pretty";
  bool replicate_above_asymptote = false;
  std::string methods = "nde,wkb,swkb,shooting";
  bool oracle = false;
  std::string which_figure;  // spectrum|figure default depends on family
  double inject_fault = 0.0;
};

sip::ModelParams model_from(const RunConfig& rc) {
  sip::ModelParams m;
  const std::string fam = rc.oracle ? "oscillator" : rc.family;
  if (fam == "tanh6") {
    m.family = sip::Family::Tanh6;
    m.B0 = rc.B0;
    m.p = (rc.p == 0.0) ? 0.35 : rc.p;
  } else if (fam == "scarf2") {
    m.family = sip::Family::ScarfII;
    m.A = rc.A;
    m.B = rc.B;
    m.p = (rc.p == 0.0) ? 1.0 : rc.p;
  } else if (fam == "oscillator") {
    m.family = sip::Family::HarmonicOscillator;
    m.omega = rc.omega;
  } else {
    throw CLI::ValidationError("--family", "unknown family '" + fam +
                                               "' (tanh6|scarf2|oscillator)");
  }
  m.validate();  // throws std::invalid_argument naming the constraint
  return m;
}

sip::SolverConfig solver_from(const RunConfig& rc, const sip::ModelParams& m) {
  sip::SolverConfig base;
  base.half_width = rc.half_width;
  base.grid_points = rc.grid;
  base.energy_tol = rc.energy_tol;
  base.root_tol = rc.root_tol;
  base.quad_tol = rc.quad_tol;
  base.max_iter = rc.max_iter;
  return sip::resolve_config(m, base);
}

sip::TableOptions table_options_from(const RunConfig& rc) {
  sip::TableOptions opts;
  opts.replicate_above_asymptote = rc.replicate_above_asymptote;
  opts.methods = {false, false, false, false};
  std::stringstream ss(rc.methods);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    bool known = false;
    for (sip::Method m : sip::kMethodOrder)
      if (tok == sip::method_name(m)) {
        opts.methods[static_cast<size_t>(m)] = true;
        known = true;
      }
    if (!known)
      throw CLI::ValidationError("--methods", "unknown method '" + tok +
                                                  "' (nde|wkb|swkb|shooting)");
  }
  return opts;
}

// Flat key=value config file with [model] / [solver] / [output] / [harness]
// sections; command-line flags win over file values.
void apply_config_file(const std::string& path, RunConfig& rc) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config file " + path);
  std::map<std::string, std::string> kv;
  std::string line, section;
  while (std::getline(f, line)) {
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    if (line.front() == '[' && line.back() == ']') {
      section = line.substr(1, line.size() - 2);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line is not key=value: " + line);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return (b == std::string::npos) ? std::string() : s.substr(b, e - b + 1);
    };
    kv[section + "." + trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }

  auto gets = [&](const std::string& key, std::string& dst) {
    if (auto it = kv.find(key); it != kv.end()) {
      dst = it->second;
      kv.erase(it);
    }
  };
  auto getd = [&](const std::string& key, double& dst) {
    if (auto it = kv.find(key); it != kv.end()) {
      dst = std::stod(it->second);
      kv.erase(it);
    }
  };
  auto geti = [&](const std::string& key, int& dst) {
    if (auto it = kv.find(key); it != kv.end()) {
      dst = std::stoi(it->second);
      kv.erase(it);
    }
  };
  auto getb = [&](const std::string& key, bool& dst) {
    if (auto it = kv.find(key); it != kv.end()) {
      dst = (it->second == "1" || it->second == "true" || it->second == "yes");
      kv.erase(it);
    }
  };

  gets("model.family", rc.family);
  getd("model.B0", rc.B0);
  getd("model.p", rc.p);
  getd("model.A", rc.A);
  getd("model.B", rc.B);
  getd("model.omega", rc.omega);
  getd("solver.half_width", rc.half_width);
  geti("solver.grid", rc.grid);
  getd("solver.energy_tol", rc.energy_tol);
  getd("solver.root_tol", rc.root_tol);
  getd("solver.quad_tol", rc.quad_tol);
  geti("solver.max_iter", rc.max_iter);
  gets("output.dir", rc.out_dir);
  gets("output.format", rc.format);
  getb("harness.replicate_above_asymptote", rc.replicate_above_asymptote);
  gets("harness.methods", rc.methods);
  if (!kv.empty())
    throw std::runtime_error("unknown config key: " + kv.begin()->first);
}

void write_file(const std::string& dir, const std::string& name,
                const std::string& content) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  std::ofstream f(fs::path(dir) / name);
  if (!f) throw std::runtime_error("cannot write " + name + " under " + dir);
  f << content;
  if (!f.good()) throw std::runtime_error("write failure: " + name);
}

int cmd_spectrum(const RunConfig& rc) {
  const sip::ModelParams m = model_from(rc);
  const sip::SpectrumExact spec = sip::exact_spectrum(m);
  const sip::SolverConfig cfg = solver_from(rc, m);
  const std::string prov = sip::provenance_string(m, cfg, table_options_from(rc));
  std::printf("# %s\n", prov.c_str());
  std::printf("# n_max=%d shift=%.4f", spec.nmax, spec.shift);
  if (spec.asymptote) std::printf(" asymptote=%.4f", *spec.asymptote);
  std::printf("\n");
  std::printf("%3s %14s %14s\n", "n", "E", "E_unshifted");
  for (const auto& [n, e] : spec.levels)
    std::printf("%3d %14.4f %14.4f\n", n, e, e - spec.shift);
  return 0;
}

int cmd_table(const RunConfig& rc) {
  const sip::ModelParams m = model_from(rc);
  const sip::SolverConfig cfg = solver_from(rc, m);
  const sip::TableOptions opts = table_options_from(rc);
  const auto rows = sip::build_table(m, cfg, opts);
  const std::string prov = sip::provenance_string(m, cfg, opts);
  write_file(rc.out_dir, "report.csv", sip::emit_csv(rows, prov));
  write_file(rc.out_dir, "report.json", sip::emit_json(rows, prov));
  if (rc.format == "csv")
    std::cout << sip::emit_csv(rows, prov);
  else if (rc.format == "json")
    std::cout << sip::emit_json(rows, prov);
  else
    std::cout << sip::emit_pretty(rows);
  return 0;
}

int cmd_figure(const RunConfig& rc) {
  const sip::ModelParams m = model_from(rc);
  const sip::SolverConfig cfg = solver_from(rc, m);
  std::string which = rc.which_figure;
  if (which.empty())
    which = (m.family == sip::Family::ScarfII) ? "fig2" : "fig1";
  sip::FigureKind kind;
  if (which == "fig1")
    kind = sip::FigureKind::Fig1;
  else if (which == "fig2")
    kind = sip::FigureKind::Fig2;
  else
    throw CLI::ValidationError("--which", "expected fig1 or fig2");
  const auto bundle = sip::build_figure(m, cfg, kind);
  const std::string prov = sip::provenance_string(m, cfg, table_options_from(rc));
  sip::write_figure_files(bundle, rc.out_dir, which, prov);
  std::printf("wrote %s_potential.dat, %s_levels.dat, %s_states.dat under %s\n",
              which.c_str(), which.c_str(), which.c_str(), rc.out_dir.c_str());
  return 0;
}

int cmd_validate(const RunConfig& rc) {
  const sip::ModelParams m = model_from(rc);
  const sip::SolverConfig cfg = solver_from(rc, m);
  sip::ValidateOptions vopts;
  vopts.inject_energy_fault = rc.inject_fault;
  const auto report = sip::validate_all(m, cfg, vopts);
  std::printf("family=%s n_max=%d\n", sip::family_name(m.family), sip::n_max(m));
  std::cerr << sip::format_report(report);

  std::ostringstream diag;
  diag << "# " << sip::provenance_string(m, cfg, table_options_from(rc)) << "\n";
  diag << "check,pass,measured,bound,detail\n";
  for (const auto& c : report.checks)
    diag << '"' << c.name << "\"," << (c.pass ? 1 : 0) << "," << c.measured << ","
         << c.bound << ",\"" << c.detail << "\"\n";
  write_file(rc.out_dir, "validate_report.csv", diag.str());
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig rc;

  // the config file seeds the defaults; explicit flags then win
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    try {
      if (arg == "--config" && i + 1 < argc)
        apply_config_file(argv[i + 1], rc);
      else if (arg.rfind("--config=", 0) == 0)
        apply_config_file(arg.substr(9), rc);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }

  CLI::App app{"exact and numerical bound-state spectra of shape-invariant potentials"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string config_path;
  app.add_option("--config", config_path, "flat key=value config file (flags win)");
  app.add_option("--family", rc.family, "model family: tanh6|scarf2|oscillator")
      ->capture_default_str();
  app.add_option("--B0", rc.B0, "tanh6 well scale (0 < p < B0/3)")->capture_default_str();
  app.add_option("--p", rc.p, "inverse-length scale (default 0.35 tanh6, 1 scarf2)");
  app.add_option("--A", rc.A, "scarf2 depth (A > p)")->capture_default_str();
  app.add_option("--B", rc.B, "scarf2 asymmetry")->capture_default_str();
  app.add_option("--omega", rc.omega, "oscillator frequency")->capture_default_str();
  app.add_option("--half-width", rc.half_width,
                 "solver domain half width (0 = per-family default)")
      ->capture_default_str();
  app.add_option("--grid", rc.grid, "grid subintervals (0 = per-family default)")
      ->capture_default_str();
  app.add_option("--energy-tol", rc.energy_tol, "comparison/flag energy band")
      ->capture_default_str();
  app.add_option("--root-tol", rc.root_tol, "root-finding tolerance")
      ->capture_default_str();
  app.add_option("--quad-tol", rc.quad_tol, "action-quadrature tolerance")
      ->capture_default_str();
  app.add_option("--max-iter", rc.max_iter, "iteration cap")->capture_default_str();
  app.add_option("--out", rc.out_dir, "output directory")->capture_default_str();
  app.add_option("--format", rc.format, "stdout format for table: pretty|csv|json")
      ->capture_default_str();
  app.add_flag("--replicate-above-asymptote", rc.replicate_above_asymptote,
               "keep numerical states on/above the asymptote (flagged)");

  auto* spectrum = app.add_subcommand("spectrum", "closed-form levels");
  auto* table = app.add_subcommand("table", "exact vs numerical comparison table");
  table->add_option("--methods", rc.methods, "comma list: nde,wkb,swkb,shooting")
      ->capture_default_str();
  table->add_flag("--oracle", rc.oracle, "run the harmonic-oscillator sanity table");
  auto* figure = app.add_subcommand("figure", "potential/levels/eigenfunction data");
  figure->add_option("--which", rc.which_figure, "fig1 (tanh6) or fig2 (scarf2)");
  auto* validate = app.add_subcommand("validate", "run the invariant suite");
  validate->add_option("--inject-fault", rc.inject_fault,
                       "test hook: offset one level in the residual check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (spectrum->parsed()) return cmd_spectrum(rc);
    if (table->parsed()) return cmd_table(rc);
    if (figure->parsed()) return cmd_figure(rc);
    if (validate->parsed()) return cmd_validate(rc);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
