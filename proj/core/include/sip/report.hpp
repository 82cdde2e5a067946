#ifndef SIP_REPORT_HPP
#define SIP_REPORT_HPP

// Spectrum comparison table: exact column plus the four numerical methods,
// with percent errors and per-cell flags, serializable as csv / json / a
// human-readable grid. Column order follows the reference layout:
// NDE (finite difference), WKB, SWKB, Shooting.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sip/config.hpp"
#include "sip/models.hpp"

namespace sip {

enum class Method { NDE = 0, WKB = 1, SWKB = 2, Shooting = 3 };
constexpr std::array<Method, 4> kMethodOrder{Method::NDE, Method::WKB, Method::SWKB,
                                             Method::Shooting};
const char* method_name(Method m);

enum class CellFlag { Ok, AboveAsymptote, OnAsymptote, Skipped };
const char* flag_name(CellFlag f);

struct MethodCell {
  std::optional<double> value;
  std::optional<double> err_pct;
  CellFlag flag = CellFlag::Skipped;
};

struct SpectrumRow {
  int n = 0;
  double exact = 0.0;
  std::array<MethodCell, 4> cells;

  const MethodCell& cell(Method m) const { return cells[static_cast<size_t>(m)]; }
  MethodCell& cell(Method m) { return cells[static_cast<size_t>(m)]; }
};

struct TableOptions {
  bool replicate_above_asymptote = false;
  std::array<bool, 4> methods{true, true, true, true};

  bool enabled(Method m) const { return methods[static_cast<size_t>(m)]; }
};

// One row per level 0..n_max. Each enabled method contributes its found
// energies, assigned to rows by nearest exact energy (the methods may skip
// rows and, for Tanh6 with the replicate flag, land above the asymptote).
// Solver failures become Skipped flags, never exceptions.
std::vector<SpectrumRow> build_table(const ModelParams& params, const SolverConfig& cfg,
                                     const TableOptions& opts = {});

// Deterministic serializations. `provenance` is echoed into a leading comment
// line (csv) or a "config" object (json).
std::string emit_csv(const std::vector<SpectrumRow>& rows, const std::string& provenance);
std::string emit_json(const std::vector<SpectrumRow>& rows, const std::string& provenance);
std::string emit_pretty(const std::vector<SpectrumRow>& rows);

// Inverse of emit_json (round-trip for machine consumers).
std::vector<SpectrumRow> rows_from_json(const std::string& text);

// "key=value key=value ..." echo of the effective run configuration.
std::string provenance_string(const ModelParams& params, const SolverConfig& cfg,
                              const TableOptions& opts);

}  // namespace sip

#endif
