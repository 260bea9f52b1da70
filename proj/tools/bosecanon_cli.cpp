// Batch front end: sweeps over (N, T/Tc), dataset emission, scaling fits and
// the self-consistency validation suites.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bosecanon/errors.hpp"
#include "bosecanon/scaling_fit.hpp"
#include "bosecanon/sweep.hpp"
#include "bosecanon/validation.hpp"

namespace {

using namespace bosecanon;

enum ExitCode : int {
  kOk = 0,
  kValidationFailed = 1,
  kConfigError = 2,
  kNonConvergence = 3,
};

struct Options {
  std::string preset;
  std::vector<std::string> particles;
  std::string t_over_tc;
  std::string m_max = "auto";
  double ground_offset = 1.0;
  std::string tail = "mb";
  std::string contour = "adaptive";
  double rel_tol = 1e-12;
  std::string out;
  std::string format = "csv";
  bool validate = false;
  std::int64_t max_n = 100;
  double tol = 1e-8;
  std::string threads = "1";
  bool strict = false;
  bool fit = false;
};

std::optional<int> parse_auto_int(const std::string& text, const std::string& what) {
  if (text == "auto") return std::nullopt;
  try {
    std::size_t used = 0;
    const int value = std::stoi(text, &used);
    if (used == text.size()) return value;
  } catch (const std::exception&) {
  }
  throw ConfigError(what + " must be an integer or 'auto', got '" + text + "'");
}

std::int64_t parse_particle_count(const std::string& text) {
  double value = 0.0;
  try {
    std::size_t used = 0;
    value = std::stod(text, &used);
    if (used != text.size()) throw ConfigError("");
  } catch (const std::exception&) {
    throw ConfigError("bad particle number '" + text + "'");
  }
  if (!(value >= 1.0) || value != std::floor(value) || value > 1e12) {
    throw ConfigError("particle numbers must be integers >= 1, got '" + text + "'");
  }
  return static_cast<std::int64_t>(value);
}

SweepConfig build_sweep_config(const Options& o) {
  SweepConfig config;
  if (!o.preset.empty()) config = preset_config(o.preset);
  if (!o.particles.empty()) {
    config.particles.clear();
    for (const std::string& p : o.particles) config.particles.push_back(parse_particle_count(p));
  }
  if (!o.t_over_tc.empty()) config.t_over_tc = parse_range(o.t_over_tc);
  if (config.particles.empty() || config.t_over_tc.empty()) {
    throw ConfigError("give --preset or both --particles and --t-over-tc");
  }
  config.m_max = parse_auto_int(o.m_max, "--m-max");
  config.ground_offset = o.ground_offset;
  config.tail_mode = parse_tail_mode(o.tail);
  config.contour = parse_contour_mode(o.contour);
  config.rel_tol = o.rel_tol;
  config.threads = parse_auto_int(o.threads, "--threads").value_or(0);
  config.validate();
  return config;
}

QuadratureConfig build_quadrature(const Options& o) {
  QuadratureConfig q;
  q.m_max = parse_auto_int(o.m_max, "--m-max");
  q.ground_offset = o.ground_offset;
  q.tail_mode = parse_tail_mode(o.tail);
  q.contour = parse_contour_mode(o.contour);
  q.convergence_rel_tol = o.rel_tol;
  q.threads = parse_auto_int(o.threads, "--threads").value_or(0);
  q.validate();
  return q;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  file << text;
  if (!file) throw std::runtime_error("write to '" + path.string() + "' failed");
}

void print_fits(std::ostream& out, const SweepResult& result) {
  struct Request {
    GapObservable observable;
    std::vector<double> temperatures;
  };
  const std::vector<Request> requests = {
      {GapObservable::limit_gap, {0.6}},
      {GapObservable::gc_gap, {0.4, 0.5, 0.6, 0.7, 0.8}},
      {GapObservable::eq10_gap, {0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}},
      {GapObservable::eq12_gap, {0.4, 0.5, 0.6, 0.7, 0.8}},
  };
  out << "# scaling fits of log|gap| vs log N\n";
  for (const Request& r : requests) {
    std::vector<double> present;
    for (double t : r.temperatures) {
      for (double g : result.config.t_over_tc) {
        if (std::abs(g - t) < 1e-9) {
          present.push_back(t);
          break;
        }
      }
    }
    for (double t : present) {
      try {
        const ScalingFit f = fit_scaling(result.rows, r.observable, t);
        out << to_string(r.observable) << " T/Tc=" << t << ": exponent " << f.exponent
            << " +- " << f.std_error << '\n';
      } catch (const DomainError& e) {
        out << to_string(r.observable) << " T/Tc=" << t << ": " << e.what() << '\n';
      }
    }
    if (present.size() > 1) {
      try {
        const ScalingFit f = fit_scaling_pooled(result.rows, r.observable, present);
        out << to_string(r.observable) << " pooled over " << present.size()
            << " temperatures: exponent " << f.exponent << " +- " << f.std_error << '\n';
      } catch (const DomainError& e) {
        out << to_string(r.observable) << " pooled: " << e.what() << '\n';
      }
    }
  }
}

int run_sweep_command(const Options& o) {
  const SweepConfig config = build_sweep_config(o);
  if (o.format != "csv" && o.format != "json" && o.format != "both") {
    throw ConfigError("--format must be csv, json or both");
  }
  if (o.format == "both" && o.out.empty()) throw ConfigError("--format both needs --out");

  const SweepResult result = run_sweep(config);

  std::ostringstream csv;
  write_csv(csv, result);
  const std::string json = to_json(result) + "\n";
  if (o.out.empty()) {
    std::cout << (o.format == "csv" ? csv.str() : json);
  } else if (o.format == "both") {
    std::filesystem::path base(o.out);
    write_file(std::filesystem::path(base).replace_extension(".csv"), csv.str());
    write_file(std::filesystem::path(base).replace_extension(".json"), json);
  } else {
    write_file(o.out, o.format == "csv" ? csv.str() : json);
  }

  std::ostream& info = o.out.empty() ? std::cerr : std::cout;
  for (const SweepRow& row : result.rows) {
    if (!row.ok()) {
      std::cerr << "row N=" << row.n << " T/Tc=" << row.t_over_tc << ": " << row.error << '\n';
    }
  }
  if (o.fit) print_fits(info, result);
  if (o.strict && result.failed_rows() > 0) return kNonConvergence;
  return kOk;
}

int run_validate_command(const Options& o) {
  const ValidationReport report = validate(o.max_n, o.tol, build_quadrature(o));
  std::cout << format_report(report);
  return report.passed() ? kOk : kValidationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Canonical ideal Bose gas in a harmonic trap: sweeps, fits and validation"};
  app.set_version_flag("--version", std::string(BOSECANON_VERSION));
  app.set_config("--config", "", "Flat key=value file mirroring the long flags");
  app.allow_config_extras(CLI::config_extras_mode::error);

  Options o;
  app.add_option("--preset", o.preset, "Figure preset")
      ->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4"}));
  app.add_option("--particles", o.particles, "Particle numbers, comma separated")
      ->delimiter(',');
  app.add_option("--t-over-tc", o.t_over_tc, "Temperature grid start:stop:step");
  app.add_option("--m-max", o.m_max, "Level truncation or 'auto'");
  app.add_option("--ground-offset", o.ground_offset, "Ground level energy in units of eps");
  app.add_option("--tail", o.tail, "Levels above m_max: truncate or mb")
      ->check(CLI::IsMember({"truncate", "mb"}));
  app.add_option("--contour", o.contour, "Integration contour: adaptive or unit")
      ->check(CLI::IsMember({"adaptive", "unit"}));
  app.add_option("--rel-tol", o.rel_tol, "Early-exit tolerance of the z integration");
  app.add_option("--out", o.out, "Output path (stem when --format both)");
  app.add_option("--format", o.format, "csv, json or both")
      ->check(CLI::IsMember({"csv", "json", "both"}));
  app.add_flag("--validate", o.validate, "Run the validation suites instead of a sweep");
  app.add_option("--max-n", o.max_n, "Largest N in the validation suites (<= 200)");
  app.add_option("--tol", o.tol, "Validation tolerance");
  app.add_option("--threads", o.threads, "Worker threads or 'auto'");
  app.add_flag("--strict", o.strict, "Exit with status 3 if any row failed");
  app.add_flag("--fit", o.fit, "Print scaling-exponent fits after the sweep");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    return o.validate ? run_validate_command(o) : run_sweep_command(o);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
}
