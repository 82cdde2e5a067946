#include "sip/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "sip/solvers.hpp"

namespace sip {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

struct Found {
  double value;
  CellFlag flag;
};

CellFlag classify(const ModelParams& params, const SolverConfig& cfg, double value) {
  if (params.family != Family::Tanh6) return CellFlag::Ok;
  const double v = asymptote(params);
  if (value > v + cfg.energy_tol) return CellFlag::AboveAsymptote;
  if (std::abs(value - v) <= cfg.energy_tol) return CellFlag::OnAsymptote;
  return CellFlag::Ok;
}

// Drop or keep near/above-asymptote artifacts according to the replicate flag.
std::vector<Found> post_filter(const ModelParams& params, const SolverConfig& cfg,
                               const TableOptions& opts, std::vector<double> values) {
  std::vector<Found> out;
  for (double v : values) {
    const CellFlag flag = classify(params, cfg, v);
    if (flag != CellFlag::Ok && !opts.replicate_above_asymptote) continue;
    out.push_back({v, flag});
  }
  return out;
}

std::vector<double> collect_fd(const ModelParams& params, const SolverConfig& cfg,
                               const TableOptions& opts, int levels) {
  const int extra = (params.family == Family::Tanh6 && opts.replicate_above_asymptote)
                        ? 2
                        : 0;
  return fd_spectrum(params, cfg, levels + extra);
}

std::vector<double> collect_shooting(const ModelParams& params, const SolverConfig& cfg,
                                     const TableOptions& opts, int levels) {
  std::vector<double> out;
  double cap;
  if (params.family == Family::Tanh6) {
    cap = asymptote(params) - 1e-9;
  } else {
    cap = exact_energy(params, n_max(params)) + 0.5;
  }
  const int below = shooting_count_below(params, cfg, cap);
  const int k_top = std::min(below, levels);
  for (int k = 0; k < k_top; ++k) out.push_back(shooting_solve(params, cfg, k));
  if (params.family == Family::Tanh6 && opts.replicate_above_asymptote)
    out.push_back(shooting_solve(params, cfg, below, /*allow_above_asymptote=*/true));
  return out;
}

std::vector<double> collect_quantization(const ModelParams& params,
                                         const SolverConfig& cfg, int levels,
                                         bool susy_rule) {
  std::vector<double> out;
  for (int m = 0; m < levels; ++m) {
    try {
      out.push_back(susy_rule ? swkb_energy(params, m, cfg)
                              : wkb_energy(params, m, cfg));
    } catch (const std::runtime_error&) {
      break;  // bracket exhausted; higher levels cannot exist either
    }
  }
  return out;
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::NDE: return "nde";
    case Method::WKB: return "wkb";
    case Method::SWKB: return "swkb";
    case Method::Shooting: return "shooting";
  }
  return "?";
}

const char* flag_name(CellFlag f) {
  switch (f) {
    case CellFlag::Ok: return "ok";
    case CellFlag::AboveAsymptote: return "above_asymptote";
    case CellFlag::OnAsymptote: return "on_asymptote";
    case CellFlag::Skipped: return "skipped";
  }
  return "?";
}

std::vector<SpectrumRow> build_table(const ModelParams& params, const SolverConfig& cfg,
                                     const TableOptions& opts) {
  params.validate();
  cfg.validate();
  const SpectrumExact spec = exact_spectrum(params);
  const int levels = spec.nmax + 1;

  std::vector<SpectrumRow> rows(levels);
  for (int n = 0; n < levels; ++n) {
    rows[n].n = n;
    rows[n].exact = spec.levels[n].second;
  }

  // Fan the four methods out; each task yields its sorted value list.
  std::array<std::future<std::vector<double>>, 4> futures;
  if (opts.enabled(Method::NDE))
    futures[0] = std::async(std::launch::async,
                            [&] { return collect_fd(params, cfg, opts, levels); });
  if (opts.enabled(Method::WKB))
    futures[1] = std::async(std::launch::async, [&] {
      return collect_quantization(params, cfg, levels, false);
    });
  if (opts.enabled(Method::SWKB))
    futures[2] = std::async(std::launch::async, [&] {
      return collect_quantization(params, cfg, levels, true);
    });
  if (opts.enabled(Method::Shooting))
    futures[3] = std::async(std::launch::async,
                            [&] { return collect_shooting(params, cfg, opts, levels); });

  for (Method m : kMethodOrder) {
    const auto idx = static_cast<size_t>(m);
    if (!opts.enabled(m)) continue;
    std::vector<Found> found;
    try {
      found = post_filter(params, cfg, opts, futures[idx].get());
    } catch (const std::exception&) {
      continue;  // whole method failed: its column stays skipped
    }
    // Assign each value to the row with the nearest exact energy; on a
    // collision the closer value wins.
    for (const Found& f : found) {
      int slot = 0;
      double best = std::abs(f.value - rows[0].exact);
      for (int n = 1; n < levels; ++n) {
        const double d = std::abs(f.value - rows[n].exact);
        if (d < best) {
          best = d;
          slot = n;
        }
      }
      MethodCell& cell = rows[slot].cell(m);
      if (cell.value && std::abs(*cell.value - rows[slot].exact) <= best) continue;
      cell.value = f.value;
      // the percent error is undefined against an exact zero level
      if (rows[slot].exact != 0.0)
        cell.err_pct = relative_error(rows[slot].exact, f.value);
      cell.flag = f.flag;
    }
  }
  return rows;
}

std::string emit_csv(const std::vector<SpectrumRow>& rows, const std::string& provenance) {
  std::ostringstream os;
  os << "# " << provenance << "\n";
  os << "n,exact";
  for (Method m : kMethodOrder)
    os << "," << method_name(m) << "," << method_name(m) << "_err_pct,"
       << method_name(m) << "_flag";
  os << "\n";
  for (const SpectrumRow& r : rows) {
    os << r.n << "," << fmt("%.3f", r.exact);
    for (Method m : kMethodOrder) {
      const MethodCell& c = r.cell(m);
      os << ",";
      if (c.value) os << fmt("%.3f", *c.value);
      os << ",";
      if (c.err_pct) os << fmt("%.3f", *c.err_pct);
      os << "," << flag_name(c.flag);
    }
    os << "\n";
  }
  return os.str();
}

std::string emit_json(const std::vector<SpectrumRow>& rows, const std::string& provenance) {
  ordered_json j;
  j["config"] = provenance;
  j["rows"] = ordered_json::array();
  for (const SpectrumRow& r : rows) {
    ordered_json row;
    row["n"] = r.n;
    row["exact"] = r.exact;
    ordered_json methods;
    for (Method m : kMethodOrder) {
      const MethodCell& c = r.cell(m);
      ordered_json cell;
      if (c.value)
        cell["value"] = *c.value;
      else
        cell["value"] = nullptr;
      if (c.err_pct)
        cell["err_pct"] = *c.err_pct;
      else
        cell["err_pct"] = nullptr;
      cell["flag"] = flag_name(c.flag);
      methods[method_name(m)] = cell;
    }
    row["methods"] = methods;
    j["rows"].push_back(row);
  }
  return j.dump(2) + "\n";
}

std::vector<SpectrumRow> rows_from_json(const std::string& text) {
  const ordered_json j = ordered_json::parse(text);
  std::vector<SpectrumRow> rows;
  for (const auto& row : j.at("rows")) {
    SpectrumRow r;
    r.n = row.at("n").get<int>();
    r.exact = row.at("exact").get<double>();
    for (Method m : kMethodOrder) {
      const auto& cell = row.at("methods").at(method_name(m));
      MethodCell& c = r.cell(m);
      if (!cell.at("value").is_null()) c.value = cell.at("value").get<double>();
      if (!cell.at("err_pct").is_null()) c.err_pct = cell.at("err_pct").get<double>();
      const std::string f = cell.at("flag").get<std::string>();
      for (CellFlag fl : {CellFlag::Ok, CellFlag::AboveAsymptote, CellFlag::OnAsymptote,
                          CellFlag::Skipped})
        if (f == flag_name(fl)) c.flag = fl;
    }
    rows.push_back(r);
  }
  return rows;
}

std::string emit_pretty(const std::vector<SpectrumRow>& rows) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof(line), "%3s %12s", "n", "Exact");
  os << line;
  for (Method m : kMethodOrder) {
    const char* names[] = {"NDE", "WKB", "SWKB", "Shooting"};
    std::snprintf(line, sizeof(line), " %12s %8s", names[static_cast<int>(m)], "err(%)");
    os << line;
  }
  os << "\n";
  bool starred = false, double_starred = false;
  for (const SpectrumRow& r : rows) {
    std::snprintf(line, sizeof(line), "%3d %12.4f", r.n, r.exact);
    os << line;
    for (Method m : kMethodOrder) {
      const MethodCell& c = r.cell(m);
      if (!c.value) {
        std::snprintf(line, sizeof(line), " %12s %8s", "-", "-");
        os << line;
        continue;
      }
      std::string v = fmt("%.4f", *c.value);
      if (c.flag == CellFlag::AboveAsymptote) {
        v += " *";
        starred = true;
      } else if (c.flag == CellFlag::OnAsymptote) {
        v += " **";
        double_starred = true;
      }
      if (c.err_pct)
        std::snprintf(line, sizeof(line), " %12s %8.3f", v.c_str(), *c.err_pct);
      else
        std::snprintf(line, sizeof(line), " %12s %8s", v.c_str(), "-");
      os << line;
    }
    os << "\n";
  }
  if (starred || double_starred) {
    os << "\n";
    if (starred) os << "*  above the asymptote\n";
    if (double_starred) os << "** on the asymptote\n";
  }
  return os.str();
}

std::string provenance_string(const ModelParams& params, const SolverConfig& cfg,
                              const TableOptions& opts) {
  std::ostringstream os;
  os << "family=" << family_name(params.family);
  switch (params.family) {
    case Family::Tanh6:
      os << " B0=" << params.B0 << " p=" << params.p;
      break;
    case Family::ScarfII:
      os << " A=" << params.A << " B=" << params.B << " p=" << params.p;
      break;
    case Family::HarmonicOscillator:
      os << " omega=" << params.omega;
      break;
  }
  os << " half_width=" << cfg.half_width << " grid=" << cfg.grid_points
     << " energy_tol=" << cfg.energy_tol << " root_tol=" << cfg.root_tol
     << " quad_tol=" << cfg.quad_tol << " max_iter=" << cfg.max_iter
     << " replicate_above_asymptote=" << (opts.replicate_above_asymptote ? 1 : 0)
     << " methods=";
  bool first = true;
  for (Method m : kMethodOrder) {
    if (!opts.enabled(m)) continue;
    if (!first) os << "+";
    os << method_name(m);
    first = false;
  }
  return os.str();
}

}  // namespace sip
