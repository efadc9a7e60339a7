#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rydeit/exact.hpp"
#include "rydeit/params.hpp"

namespace rydeit {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kCodeVersion = "0.1.0";

enum class SolverKind { exact, blockade, closed_form };

enum class Observable { chi1, chi2, eigenvalue, relaxation, ratio, limits };

enum class OutputFormat { csv, json };

struct GridSpec {
  std::vector<double> values;  ///< explicit grid, or expanded from the range below
  // Range form; only used for echoing the spec.
  std::optional<double> start, stop;
  std::optional<int> count;
  bool log_spacing = false;
};

struct SweepSpec {
  SolverKind solver = SolverKind::exact;
  ModelParams base;
  std::vector<std::string> axes;  ///< one or two parameter names
  std::vector<GridSpec> grids;    ///< one per axis
  std::vector<Observable> outputs{Observable::chi1, Observable::chi2};
  std::optional<std::string> output_path;
  OutputFormat format = OutputFormat::csv;
  std::optional<int> jobs;
  /// Retry singular blockade points with omega_c scaled by (1 + 1e-7).
  bool perturb_singular = false;
  ExactOptions exact;

  bool wants(Observable o) const;
};

/// Parses and validates a spec; throws std::invalid_argument with a usage
/// message before anything is computed.
SweepSpec parse_sweep_spec(const nlohmann::json& j);
nlohmann::json to_json(const SweepSpec& spec);

/// Expands {start, stop, count[, spacing]} or an explicit list.
GridSpec parse_grid(const nlohmann::json& j);

/// Applies "name=value" overrides to the base parameters.
void apply_override(SweepSpec& spec, const std::string& assignment);

enum class RowStatus { ok, failed, perturbed };

struct SweepRow {
  std::vector<double> axis_values;
  Complex chi1{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  Complex chi2 = chi1;
  std::vector<double> aux;  ///< values for SweepResult::aux_columns
  RowStatus status = RowStatus::ok;
  std::string detail;

  std::string status_string() const;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<std::string> aux_columns;
  std::vector<SweepRow> rows;
  std::vector<std::string> decisions;  ///< solver decisions triggered, in row order
  std::vector<std::string> warnings;
  std::vector<std::pair<double, double>> relaxation_boundary;

  bool any_failed() const;
};

/// Deterministic: rows follow the grid (axis 0 outer) regardless of how
/// points are scheduled; a failing point never aborts the sweep.
SweepResult run_sweep(const SweepSpec& spec);

/// 17 significant digits; header: axes, re_chi1, im_chi1, re_chi2, im_chi2,
/// aux columns, status.
void write_csv(const SweepResult& result, std::ostream& os);

/// Full result with provenance. The timestamp is the only field that differs
/// between identical runs.
nlohmann::json to_json(const SweepResult& result, bool include_timestamp = true);

/// Writes to spec.output_path (or `path` when given) in the requested format.
void write_result(const SweepResult& result, const std::string& path, OutputFormat format);

std::string to_string(SolverKind s);
std::string to_string(Observable o);

struct NullRefraction {
  std::int64_t m = 0;          ///< minimiser of |Re chi^(2)(delta = 0)|
  double re_chi2 = 0.0;
  bool crossing = false;       ///< false when no sign change was found
  std::int64_t bracket_lo = 0;  ///< sign change between bracket_lo and bracket_lo + 1
  std::vector<std::pair<std::int64_t, double>> scan;  ///< (M, Re chi^(2)) for every M
};

/// Scans M in [m_min, m_max] on the blockade path at delta = 0. Returns the
/// better endpoint of the first sign-change bracket of Re chi^(2), or the
/// global minimiser of |Re chi^(2)| with crossing = false.
NullRefraction find_null_refraction(const ModelParams& params, std::int64_t m_min,
                                    std::int64_t m_max);

}  // namespace rydeit
