#include "bosecanon/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "bosecanon/asymptotics.hpp"
#include "bosecanon/errors.hpp"
#include "bosecanon/grand_canonical.hpp"
#include "bosecanon/parallel.hpp"

namespace bosecanon {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format_double(double x) {
  if (!std::isfinite(x)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_quote(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::ordered_json json_number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

void fill_canonical(SweepRow& row, const CanonicalResult& c) {
  const double n = static_cast<double>(row.n);
  const double var = std::max(c.n0_variance(), 0.0);
  row.canonical_n0 = c.n0_mean;
  row.canonical_n0_over_n = c.n0_mean / n;
  row.canonical_delta_n0 = std::sqrt(var);
  row.canonical_normalized_delta_n0 =
      row.canonical_delta_n0 / std::sqrt(c.n0_mean * (c.n0_mean + 1.0));
  row.canonical_n1 = c.n1_mean;
  row.canonical_corr_01_normalized = c.covariance_01() / (c.n0_mean * c.n1_mean);
  row.m_max = c.diagnostics.m_max;
  row.intervals = c.diagnostics.intervals_evaluated;
  row.imag_residual = c.diagnostics.imag_residual;
}

void clear_canonical(SweepRow& row) {
  row.canonical_n0 = row.canonical_n0_over_n = row.canonical_delta_n0 = kNaN;
  row.canonical_normalized_delta_n0 = row.canonical_n1 = kNaN;
  row.canonical_corr_01_normalized = kNaN;
  row.intervals = 0;
  row.imag_residual = kNaN;
}

}  // namespace

void SweepConfig::validate() const {
  if (particles.empty()) throw ConfigError("no particle numbers given");
  for (std::int64_t n : particles) {
    if (n < 1) throw ConfigError("particle numbers must be >= 1");
  }
  if (t_over_tc.empty()) throw ConfigError("empty T/Tc grid");
  for (double x : t_over_tc) {
    if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError("T/Tc values must be positive");
  }
  if (m_max && *m_max < 1) throw ConfigError("m_max must be >= 1");
  if (!(ground_offset > 0.0) || !std::isfinite(ground_offset)) {
    throw ConfigError("ground offset must be positive");
  }
  if (threads < 0) throw ConfigError("threads must be >= 0");
  quadrature().validate();
}

QuadratureConfig SweepConfig::quadrature() const {
  QuadratureConfig q;
  q.convergence_rel_tol = rel_tol;
  q.tail_mode = tail_mode;
  q.contour = contour;
  q.threads = 1;
  return q;
}

std::vector<double> expand_range(double start, double stop, double step) {
  if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(stop)) {
    throw ConfigError("range needs finite bounds and a positive step");
  }
  if (stop < start) throw ConfigError("range stop is below its start");
  const auto count = static_cast<std::int64_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  if (count > 1000000) throw ConfigError("range has too many points");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  // Rounding to 12 decimals keeps grids like 0.1:0.9:0.05 on their nominal values.
  for (std::int64_t i = 0; i < count; ++i) {
    out.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
  }
  return out;
}

std::vector<double> parse_range(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw ConfigError("");
    } catch (const std::exception&) {
      throw ConfigError("bad range '" + text + "', expected start:stop:step");
    }
  }
  if (parts.size() == 1) return {parts[0]};
  if (parts.size() != 3) throw ConfigError("bad range '" + text + "', expected start:stop:step");
  return expand_range(parts[0], parts[1], parts[2]);
}

std::vector<double> preset_grid() {
  std::vector<double> out;
  for (int k = 10; k <= 140; ++k) {
    if (k % 5 == 0 || (k >= 90 && k <= 110)) out.push_back(k / 100.0);
  }
  return out;
}

SweepConfig preset_config(const std::string& name) {
  if (name != "fig1" && name != "fig2" && name != "fig3" && name != "fig4") {
    throw ConfigError("unknown preset '" + name + "' (expected fig1..fig4)");
  }
  SweepConfig config;
  config.preset = name;
  config.particles = {100, 1000, 10000};
  config.t_over_tc = preset_grid();
  return config;
}

SweepRow evaluate_row(std::int64_t n, double t_over_tc, const SweepConfig& config) {
  SweepRow row;
  row.n = n;
  row.t_over_tc = t_over_tc;

  const TrapSpectrum probe(1, config.ground_offset);
  const double t = t_over_tc * critical_temperature(probe, n);
  row.t_over_eps = t / probe.level_spacing();
  const int m_max = config.m_max.value_or(default_max_level(row.t_over_eps));
  const TrapSpectrum spectrum(m_max, config.ground_offset);
  row.m_max = m_max;

  try {
    fill_canonical(row, canonical_observables(spectrum, t, n, config.quadrature()));
  } catch (const std::exception& e) {
    clear_canonical(row);
    row.error = e.what();
  }

  try {
    const GrandCanonicalState gc = solve_fugacity(
        spectrum, t, n, config.tail_mode == TailMode::maxwell_boltzmann);
    row.gc_n0_over_n = gc.ground_occupation() / static_cast<double>(n);
    row.gc_delta_n0 = gc.ground_fluctuation();
  } catch (const std::exception& e) {
    row.gc_n0_over_n = row.gc_delta_n0 = kNaN;
    if (row.error.empty()) row.error = std::string("grand canonical: ") + e.what();
  }

  row.fraction_limit = condensate_fraction_limit(t_over_tc);
  const bool condensed = t_over_tc < 1.0;
  row.eq10_value = condensed ? delta_n0_fraction_limit(n, t_over_tc) : kNaN;
  row.eq12_value = condensed ? correlation_limit(n, t_over_tc) : kNaN;

  row.limit_gap = condensed
                      ? (row.fraction_limit - row.canonical_n0_over_n) / row.fraction_limit
                      : kNaN;
  row.gc_gap = (row.gc_n0_over_n - row.canonical_n0_over_n) / row.gc_n0_over_n;
  row.eq10_gap = (row.canonical_delta_n0 / row.canonical_n0) / row.eq10_value - 1.0;
  row.eq12_gap = row.canonical_corr_01_normalized / row.eq12_value - 1.0;
  return row;
}

std::int64_t SweepResult::failed_rows() const {
  std::int64_t count = 0;
  for (const SweepRow& row : rows) count += row.ok() ? 0 : 1;
  return count;
}

SweepResult run_sweep(const SweepConfig& config) {
  config.validate();
  SweepResult result;
  result.config = config;
  const std::size_t nt = config.t_over_tc.size();
  result.rows.resize(config.particles.size() * nt);
  parallel_for(static_cast<std::int64_t>(result.rows.size()),
               resolve_thread_count(config.threads), [&](std::int64_t i) {
                 const auto k = static_cast<std::size_t>(i);
                 result.rows[k] =
                     evaluate_row(config.particles[k / nt], config.t_over_tc[k % nt], config);
               });
  return result;
}

const std::vector<std::string>& row_field_names() {
  static const std::vector<std::string> names = {
      "n",
      "t_over_tc",
      "t_over_eps",
      "canonical_n0",
      "canonical_n0_over_n",
      "canonical_delta_n0",
      "canonical_normalized_delta_n0",
      "canonical_n1",
      "canonical_corr_01_normalized",
      "gc_n0_over_n",
      "gc_delta_n0",
      "fraction_limit",
      "eq10_value",
      "eq12_value",
      "limit_gap",
      "gc_gap",
      "eq10_gap",
      "eq12_gap",
      "m_max",
      "intervals",
      "imag_residual",
      "error",
  };
  return names;
}

std::vector<double> row_numeric_values(const SweepRow& r) {
  return {static_cast<double>(r.n),
          r.t_over_tc,
          r.t_over_eps,
          r.canonical_n0,
          r.canonical_n0_over_n,
          r.canonical_delta_n0,
          r.canonical_normalized_delta_n0,
          r.canonical_n1,
          r.canonical_corr_01_normalized,
          r.gc_n0_over_n,
          r.gc_delta_n0,
          r.fraction_limit,
          r.eq10_value,
          r.eq12_value,
          r.limit_gap,
          r.gc_gap,
          r.eq10_gap,
          r.eq12_gap,
          static_cast<double>(r.m_max),
          static_cast<double>(r.intervals),
          r.imag_residual};
}

void write_csv(std::ostream& out, const SweepResult& result) {
  const auto& names = row_field_names();
  for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
  out << '\n';
  for (const SweepRow& row : result.rows) {
    const std::vector<double> values = row_numeric_values(row);
    out << row.n;
    for (std::size_t i = 1; i < values.size(); ++i) {
      out << ',';
      if (names[i] == "m_max") {
        out << row.m_max;
      } else if (names[i] == "intervals") {
        out << row.intervals;
      } else {
        out << format_double(values[i]);
      }
    }
    out << ',' << csv_quote(row.error) << '\n';
  }
}

std::string to_json(const SweepResult& result, int indent) {
  using json = nlohmann::ordered_json;
  const SweepConfig& c = result.config;
  const auto& names = row_field_names();

  json rows = json::array();
  double worst_imag = 0.0;
  for (const SweepRow& row : result.rows) {
    const std::vector<double> values = row_numeric_values(row);
    json obj = json::object();
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (names[i] == "n") {
        obj[names[i]] = row.n;
      } else if (names[i] == "m_max") {
        obj[names[i]] = row.m_max;
      } else if (names[i] == "intervals") {
        obj[names[i]] = row.intervals;
      } else {
        obj[names[i]] = json_number(values[i]);
      }
    }
    obj["error"] = row.error.empty() ? json(nullptr) : json(row.error);
    if (std::isfinite(row.imag_residual)) worst_imag = std::max(worst_imag, row.imag_residual);
    rows.push_back(std::move(obj));
  }

  json config = {
      {"preset", c.preset.empty() ? json(nullptr) : json(c.preset)},
      {"particles", c.particles},
      {"t_over_tc", c.t_over_tc},
      {"m_max", c.m_max ? json(*c.m_max) : json("auto")},
      {"ground_offset", c.ground_offset},
      {"tail", to_string(c.tail_mode)},
      {"contour", to_string(c.contour)},
      {"rel_tol", c.rel_tol},
  };
  json meta = {
      {"engine", "bosecanon"},
      {"version", BOSECANON_VERSION},
      {"config", config},
      {"diagnostics",
       {{"rows", result.rows.size()},
        {"failed_rows", result.failed_rows()},
        {"max_imag_residual", worst_imag}}},
  };
  json doc = {{"meta", meta}, {"rows", rows}};
  return doc.dump(indent);
}

}  // namespace bosecanon
