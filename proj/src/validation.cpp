#include "bosecanon/validation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bosecanon/errors.hpp"
#include "bosecanon/oracle.hpp"

namespace bosecanon {
namespace {

double rel_dev(double x, double y) {
  const double scale = std::max(std::abs(x), std::abs(y));
  return scale == 0.0 ? 0.0 : std::abs(x - y) / scale;
}

// Largest relative change of the four canonical moments, plus the change of
// log Z (which is the relative change of Z itself).
double result_deviation(const CanonicalResult& a, const CanonicalResult& b) {
  return std::max({rel_dev(a.n0_mean, b.n0_mean),
                   rel_dev(a.n0_second_moment, b.n0_second_moment),
                   rel_dev(a.n1_mean, b.n1_mean), rel_dev(a.n0_n1_mean, b.n0_n1_mean),
                   std::abs(a.log_z - b.log_z)});
}

struct Probe {
  std::int64_t n;
  double t;
};

std::vector<Probe> probe_points(std::int64_t max_n) {
  const TrapSpectrum unit(1);
  std::vector<Probe> out;
  auto add = [&](std::int64_t n, double t_over_tc) {
    n = std::min(n, max_n);
    out.push_back({n, t_over_tc * critical_temperature(unit, n)});
  };
  add(10, 0.5);
  add(50, 0.8);
  add(max_n, 0.3);
  add(max_n, 0.6);
  add(max_n, 1.2);
  return out;
}

std::string describe(std::int64_t n, double t, const std::string& extra = {}) {
  std::ostringstream s;
  s << "N=" << n << " T=" << t;
  if (!extra.empty()) s << ' ' << extra;
  return s.str();
}

class SuiteTracker {
 public:
  explicit SuiteTracker(std::string name) { report_.name = std::move(name); }

  void record(double deviation, const std::string& where) {
    ++report_.cases;
    if (!(deviation <= report_.max_deviation)) {
      report_.max_deviation = std::isnan(deviation) ? HUGE_VAL : deviation;
      report_.worst_case = where;
    }
  }
  void fail(const std::string& where, const std::string& what) {
    record(HUGE_VAL, where + ": " + what);
  }
  SuiteReport finish(double tolerance) {
    report_.passed = report_.cases > 0 && report_.max_deviation <= tolerance;
    return report_;
  }

 private:
  SuiteReport report_;
};

double ground_offset_of(const QuadratureConfig& base) {
  return base.ground_offset.value_or(1.0);
}

SuiteReport oracle_suite(std::int64_t max_n, double tol, const QuadratureConfig& base) {
  SuiteTracker track("oracle");
  for (double t : {0.5, 2.0, 5.0, 10.0}) {
    for (int m : {20, 40}) {
      const TrapSpectrum spectrum(m, ground_offset_of(base));
      const RecursionTable table(spectrum, t, max_n, model_for(base.tail_mode));
      QuadratureConfig config = base;
      config.m_max = m;
      config.ground_offset.reset();
      double previous_log_z = 0.0;
      for (std::int64_t n = 1; n <= max_n; ++n) {
        const std::string where = describe(n, t, "M=" + std::to_string(m));
        try {
          const CanonicalResult r = canonical_observables(spectrum, t, n, config);
          const double ratio_dev =
              std::abs(std::expm1((r.log_z - previous_log_z) - table.log_ratio(n)));
          previous_log_z = r.log_z;
          track.record(std::max({ratio_dev,
                                 rel_dev(r.n0_mean, table.state_occupation(spectrum.energy(0), n)),
                                 rel_dev(r.n1_mean, table.state_occupation(spectrum.energy(1), n))}),
                       where);
        } catch (const std::exception& e) {
          track.fail(where, e.what());
          previous_log_z = table.log_z(n);
        }
      }
    }
  }
  return track.finish(tol);
}

SuiteReport ground_suite(std::int64_t max_n, double tol, const QuadratureConfig& base) {
  SuiteTracker track("ground_offset");
  const double a = ground_offset_of(base);
  for (const Probe& p : probe_points(max_n)) {
    for (double b : {0.25 * a, 3.0 * a}) {
      QuadratureConfig config = base;
      config.ground_offset.reset();
      const std::string where = describe(p.n, p.t, "offsets " + std::to_string(a) + "/" +
                                                       std::to_string(b));
      try {
        const TrapSpectrum spectrum(base.m_max.value_or(default_max_level(p.t)), a);
        const ShiftInvarianceReport r = shift_invariance_check(spectrum, p.t, p.n, config, a, b);
        track.record(std::max(r.max_relative_deviation,
                              r.log_z_shift_error / static_cast<double>(p.n)),
                     where);
      } catch (const std::exception& e) {
        track.fail(where, e.what());
      }
    }
  }
  return track.finish(tol);
}

SuiteReport truncation_suite(std::int64_t max_n, double tol, const QuadratureConfig& base) {
  SuiteTracker track("truncation");
  for (const Probe& p : probe_points(max_n)) {
    const int m = base.m_max.value_or(default_max_level(p.t));
    const std::string where = describe(p.n, p.t, "M=" + std::to_string(m));
    try {
      const TrapSpectrum spectrum(m, ground_offset_of(base));
      QuadratureConfig one = base;
      one.m_max = m;
      QuadratureConfig two = base;
      two.m_max = 2 * m;
      track.record(result_deviation(canonical_observables(spectrum, p.t, p.n, one),
                                    canonical_observables(spectrum, p.t, p.n, two)),
                   where);
    } catch (const std::exception& e) {
      track.fail(where, e.what());
    }
  }
  return track.finish(tol);
}

SuiteReport grid_suite(std::int64_t max_n, double tol, const QuadratureConfig& base) {
  SuiteTracker track("grid");
  for (const Probe& p : probe_points(max_n)) {
    const std::string where = describe(p.n, p.t);
    try {
      const TrapSpectrum spectrum(base.m_max.value_or(default_max_level(p.t)),
                                  ground_offset_of(base));
      const CanonicalResult ref = canonical_observables(spectrum, p.t, p.n, base);
      QuadratureConfig finer = base;
      finer.intervals_per_oscillation = 2 * base.intervals_per_oscillation;
      track.record(result_deviation(ref, canonical_observables(spectrum, p.t, p.n, finer)),
                   where + " intervals x2");
      QuadratureConfig denser = base;
      denser.points_per_interval = 2 * base.resolved_points_per_interval(p.n);
      track.record(result_deviation(ref, canonical_observables(spectrum, p.t, p.n, denser)),
                   where + " nodes x2");
    } catch (const std::exception& e) {
      track.fail(where, e.what());
    }
  }
  return track.finish(tol);
}

}  // namespace

bool ValidationReport::passed() const {
  return !suites.empty() &&
         std::all_of(suites.begin(), suites.end(), [](const SuiteReport& s) { return s.passed; });
}

ValidationReport validate(std::int64_t max_n, double tolerance, const QuadratureConfig& base) {
  if (max_n < 1 || max_n > 200) throw ConfigError("validation max_n must lie in [1, 200]");
  if (!(tolerance >= 0.0)) throw ConfigError("validation tolerance must be >= 0");
  base.validate();
  ValidationReport report;
  report.max_n = max_n;
  report.tolerance = tolerance;
  report.suites.push_back(oracle_suite(max_n, tolerance, base));
  report.suites.push_back(ground_suite(max_n, tolerance, base));
  report.suites.push_back(truncation_suite(max_n, tolerance, base));
  report.suites.push_back(grid_suite(max_n, tolerance, base));
  return report;
}

std::string format_report(const ValidationReport& report) {
  std::ostringstream out;
  out << "validation max_n=" << report.max_n << " tol=" << report.tolerance << '\n';
  for (const SuiteReport& s : report.suites) {
    out << (s.passed ? "PASS " : "FAIL ") << s.name << ": max deviation " << s.max_deviation
        << " over " << s.cases << " cases";
    if (!s.worst_case.empty()) out << " (worst " << s.worst_case << ')';
    out << '\n';
  }
  out << (report.passed() ? "all suites passed" : "validation failed") << '\n';
  return out.str();
}

}  // namespace bosecanon
