#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bosecanon/canonical_integral.hpp"

namespace bosecanon {

/// Settings shared by every row of a sweep.
struct SweepConfig {
  std::string preset;  ///< empty for an ad hoc grid
  std::vector<std::int64_t> particles;
  std::vector<double> t_over_tc;
  /// Level truncation; unset derives it from T/eps per row.
  std::optional<int> m_max;
  double ground_offset = 1.0;
  TailMode tail_mode = TailMode::maxwell_boltzmann;
  ContourMode contour = ContourMode::adaptive;
  double rel_tol = 1e-12;
  /// Rows evaluated concurrently; 0 means hardware concurrency.
  int threads = 1;

  void validate() const;
  QuadratureConfig quadrature() const;
};

/// start, start + step, ... up to stop inclusive (with a 1e-9 step slack).
std::vector<double> expand_range(double start, double stop, double step);
/// Parses "start:stop:step".
std::vector<double> parse_range(const std::string& text);

/// The T/Tc grid used by the figure presets: 0.10..1.40 in steps of 0.05,
/// refined to 0.01 on [0.90, 1.10].
std::vector<double> preset_grid();
/// fig1..fig4. Throws ConfigError for an unknown name.
SweepConfig preset_config(const std::string& name);

/// One grid point. Canonical values come from the integral engine, the
/// grand-canonical ones from solve_fugacity at <N> = N on the same
/// truncated spectrum, and the asymptotic ones from the large-N formulas
/// (NaN at or above Tc where those formulas do not apply).
struct SweepRow {
  std::int64_t n = 0;
  double t_over_tc = 0.0;
  double t_over_eps = 0.0;

  double canonical_n0 = 0.0;
  double canonical_n0_over_n = 0.0;
  double canonical_delta_n0 = 0.0;
  /// delta_n0 / sqrt(N0 (N0 + 1)).
  double canonical_normalized_delta_n0 = 0.0;
  double canonical_n1 = 0.0;
  /// <dn0 dn1> / (N0 N1); negative.
  double canonical_corr_01_normalized = 0.0;

  double gc_n0_over_n = 0.0;
  double gc_delta_n0 = 0.0;

  double fraction_limit = 0.0;
  /// Large-N estimate of delta_n0 / N0.
  double eq10_value = 0.0;
  /// Large-N estimate of <dn0 dn1> / (N0 N1).
  double eq12_value = 0.0;

  /// (limit - N0/N) / limit.
  double limit_gap = 0.0;
  /// (N0_gc - N0_c) / N0_gc.
  double gc_gap = 0.0;
  /// (delta_n0/N0)_canonical / eq10_value - 1.
  double eq10_gap = 0.0;
  /// corr_01_normalized / eq12_value - 1.
  double eq12_gap = 0.0;

  int m_max = 0;
  std::int64_t intervals = 0;
  double imag_residual = 0.0;

  /// Non-empty when the engine failed for this row; the canonical fields and
  /// everything derived from them are NaN.
  std::string error;

  bool ok() const { return error.empty(); }
};

SweepRow evaluate_row(std::int64_t n, double t_over_tc, const SweepConfig& config);

struct SweepResult {
  SweepConfig config;
  std::vector<SweepRow> rows;  ///< particle-major, then T/Tc
  std::int64_t failed_rows() const;
};

SweepResult run_sweep(const SweepConfig& config);

/// Column names in CSV order; JSON rows use the same keys.
const std::vector<std::string>& row_field_names();
/// Field values in the order of row_field_names(), excluding `error`.
std::vector<double> row_numeric_values(const SweepRow& row);

/// Header plus one line per row, 17 significant digits, NaN as empty cell.
void write_csv(std::ostream& out, const SweepResult& result);
/// {"meta": {...}, "rows": [...]} with NaN as null.
std::string to_json(const SweepResult& result, int indent = 2);

}  // namespace bosecanon
