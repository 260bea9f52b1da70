// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit status if
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bosecanon/asymptotics.hpp"
#include "bosecanon/canonical_integral.hpp"
#include "bosecanon/grand_canonical.hpp"
#include "bosecanon/oracle.hpp"
#include "bosecanon/scaling_fit.hpp"
#include "bosecanon/sweep.hpp"

using namespace bosecanon;

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      passed = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double rel(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool in_band(double value, double center, double half_width) {
  return std::abs(value - center) <= half_width;
}

const std::vector<std::int64_t> kDecades = {100, 1000, 10000};

// Rows of the shared (N, T/Tc) sweep used by the figure criteria.
class FigureData {
 public:
  FigureData() {
    SweepConfig config;
    config.particles = kDecades;
    config.t_over_tc = expand_range(0.3, 1.4, 0.05);
    const auto start = std::chrono::steady_clock::now();
    result_ = run_sweep(config);
    seconds_ = seconds_since(start);
    for (const SweepRow& row : result_.rows) {
      index_[{row.n, key(row.t_over_tc)}] = &row;
    }
  }

  const std::vector<SweepRow>& rows() const { return result_.rows; }
  double seconds() const { return seconds_; }
  const SweepRow& at(std::int64_t n, double x) const { return *index_.at({n, key(x)}); }

 private:
  static long key(double x) { return std::lround(x * 1000.0); }

  SweepResult result_;
  double seconds_ = 0.0;
  std::map<std::pair<std::int64_t, long>, const SweepRow*> index_;
};

Outcome oracle_equivalence() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::string where;
  int cases = 0;
  for (double t : {0.5, 2.0, 5.0, 10.0}) {
    for (int m : {20, 40}) {
      const TrapSpectrum spectrum(m, 1.0);
      const RecursionTable table(spectrum, t, 100, SingleParticleModel::truncated_mb_tail);
      double previous = 0.0;
      for (std::int64_t n = 1; n <= 100; ++n) {
        const CanonicalResult r = canonical_observables(spectrum, t, n);
        const double dev = std::max(
            {std::abs(std::expm1((r.log_z - previous) - table.log_ratio(n))),
             rel(r.n0_mean, table.state_occupation(spectrum.energy(0), n)),
             rel(r.n1_mean, table.state_occupation(spectrum.energy(1), n))});
        previous = r.log_z;
        ++cases;
        if (dev > worst) {
          worst = dev;
          where = "N=" + std::to_string(n) + " T=" + std::to_string(t) + " M=" + std::to_string(m);
        }
      }
    }
  }
  const double elapsed = seconds_since(start);
  out.detail << cases << " cases, max relative deviation " << worst << " at " << where << ", "
             << elapsed << " s";
  out.require(worst <= 1e-8, "deviation <= 1e-8");
  out.require(elapsed <= 60.0, "runtime <= 60 s");
  return out;
}

// <n0 n1> vanishes identically at N = 1, where a relative deviation is
// meaningless; there it is measured against <n0><n1>.
double scaled(double x, double exact, double scale) {
  return std::abs(x - exact) / std::max(std::abs(exact), std::abs(scale));
}

Outcome enumeration_equivalence() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  QuadratureConfig config;
  config.tail_mode = TailMode::truncate;
  double worst = 0.0;
  int cases = 0;
  for (double offset : {0.0, 1.0}) {
    const TrapSpectrum two_levels(1, offset);
    for (double t : {0.25, 1.0, 3.0, 10.0}) {
      for (int n = 1; n <= 4; ++n) {
        const EnumerationResult e = enumerate_exact(state_energies(two_levels), t, n);
        const CanonicalResult r = canonical_observables(two_levels, t, n, config);
        worst = std::max({worst, rel(r.n0_mean, e.mean[0]), rel(r.n0_second_moment, e.second[0][0]),
                          rel(r.n1_mean, e.mean[1]), scaled(r.n0_n1_mean, e.second[0][1], e.mean[0] * e.mean[1]),
                          std::abs(r.log_z - std::log(e.z))});
        ++cases;
      }
    }
  }
  const double elapsed = seconds_since(start);
  out.detail << cases << " cases, max relative deviation " << worst << ", " << elapsed << " s";
  out.require(worst <= 1e-12, "deviation <= 1e-12");
  out.require(elapsed <= 10.0, "runtime of seconds");
  return out;
}

Outcome figure1(const FigureData& data) {
  Outcome out;
  bool bounded = true;
  for (const SweepRow& row : data.rows()) {
    bounded = bounded && row.ok() && row.canonical_n0_over_n > 0.0 && row.canonical_n0_over_n < 1.0;
  }
  out.require(bounded, "0 < N0/N < 1 on every row");

  bool from_below = true;
  for (double x : {0.8, 0.85, 0.9, 0.95}) {
    for (std::int64_t n : kDecades) {
      from_below = from_below && data.at(n, x).canonical_n0_over_n < data.at(n, x).fraction_limit;
    }
    from_below = from_below && data.at(10000, x).limit_gap < data.at(100, x).limit_gap;
  }
  out.require(from_below, "N0/N below 1-(T/Tc)^3 near Tc, closer at larger N");

  const ScalingFit fit = fit_scaling(data.rows(), GapObservable::limit_gap, 0.6);
  out.detail << "gap exponent at T/Tc=0.6: " << fit.exponent << " +- " << fit.std_error
             << " (target -0.33 +- 0.1); sweep " << data.seconds() << " s";
  out.require(in_band(fit.exponent, -0.33, 0.1), "exponent in band");
  return out;
}

Outcome figure2(const FigureData& data) {
  Outcome out;
  const std::vector<double> temps = {0.4, 0.5, 0.6, 0.7, 0.8};
  out.detail << "per-T exponents";
  bool positive = true;
  for (double x : temps) {
    const ScalingFit f = fit_scaling(data.rows(), GapObservable::gc_gap, x);
    out.detail << ' ' << x << ':' << f.exponent;
    out.require(in_band(f.exponent, -1.15, 0.15), "exponent at T/Tc=" + std::to_string(x));
    for (std::int64_t n : kDecades) positive = positive && data.at(n, x).gc_gap > 0.0;
  }
  const ScalingFit pooled = fit_scaling_pooled(data.rows(), GapObservable::gc_gap, temps);
  out.detail << "; pooled " << pooled.exponent << " +- " << pooled.std_error
             << " (target -1.15 +- 0.15)";
  out.require(in_band(pooled.exponent, -1.15, 0.15), "pooled exponent in band");
  out.require(positive, "grand-canonical N0 above canonical N0");
  return out;
}

Outcome figure3(const FigureData& data) {
  Outcome out;
  const std::vector<double> temps = {0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  bool shrinking = true;
  for (double x : temps) {
    shrinking = shrinking && std::abs(data.at(10000, x).eq10_gap) < std::abs(data.at(100, x).eq10_gap);
  }
  out.require(shrinking, "discrepancy smaller at N=1e4 than at N=1e2 for every T/Tc");
  const ScalingFit pooled = fit_scaling_pooled(data.rows(), GapObservable::eq10_gap, temps);
  out.detail << "pooled exponent over T/Tc 0.3..0.9: " << pooled.exponent << " +- "
             << pooled.std_error << " (target -0.25 +- 0.1)";
  out.require(in_band(pooled.exponent, -0.25, 0.1), "pooled exponent in band");

  bool above = true, below = true;
  for (double x : {1.05, 1.1, 1.2, 1.3, 1.4}) {
    double previous = HUGE_VAL;
    for (std::int64_t n : kDecades) {
      const double miss = std::abs(1.0 - data.at(n, x).canonical_normalized_delta_n0);
      above = above && miss < previous;
      previous = miss;
    }
    above = above && previous < 0.01;
  }
  for (double x : {0.3, 0.4, 0.5, 0.6, 0.7, 0.8}) {
    double previous = HUGE_VAL;
    for (std::int64_t n : kDecades) {
      const double value = data.at(n, x).canonical_normalized_delta_n0;
      below = below && value < previous;
      previous = value;
    }
    below = below && previous < 0.05;
  }
  out.detail << "; normalized dn0 at N=1e4: " << data.at(10000, 0.5).canonical_normalized_delta_n0
             << " (T/Tc=0.5), " << data.at(10000, 1.3).canonical_normalized_delta_n0
             << " (T/Tc=1.3)";
  out.require(above, "normalized fluctuation -> 1 above Tc");
  out.require(below, "normalized fluctuation -> 0 below Tc");
  return out;
}

Outcome figure4(const FigureData& data) {
  Outcome out;
  bool positive = true;
  for (const SweepRow& row : data.rows()) {
    positive = positive && -row.canonical_corr_01_normalized > 0.0;
  }
  out.require(positive, "-<dn0 dn1>/(N0 N1) > 0 on every row");
  const std::vector<double> temps = {0.4, 0.5, 0.6, 0.7, 0.8};
  bool shrinking = true;
  for (double x : temps) {
    shrinking = shrinking && std::abs(data.at(10000, x).eq12_gap) < std::abs(data.at(100, x).eq12_gap);
  }
  out.require(shrinking, "discrepancy smaller at N=1e4 than at N=1e2");
  const ScalingFit pooled = fit_scaling_pooled(data.rows(), GapObservable::eq12_gap, temps);
  out.detail << "pooled exponent over T/Tc 0.4..0.8: " << pooled.exponent << " +- "
             << pooled.std_error << " (target -0.33 +- 0.1)";
  out.require(in_band(pooled.exponent, -0.33, 0.1), "pooled exponent in band");
  return out;
}

// Canonical <n1> against 1/(exp(eps/T) - 1); the fractional discrepancy is
// expected to be T/N0 within a factor of two.
Outcome first_level_consistency() {
  Outcome out;
  const std::int64_t n = 1000;
  for (double x : {0.3, 0.5}) {
    const double t = x * critical_temperature(TrapSpectrum(1), n);
    const TrapSpectrum spectrum(default_max_level(t), 1.0);
    const CanonicalResult c = canonical_observables(spectrum, t, n);
    const double at_zero_mu = 1.0 / std::expm1(spectrum.level_spacing() / t);
    const double expected = t / c.n0_mean;
    const double canonical_frac = (at_zero_mu - c.n1_mean) / at_zero_mu;
    const double ratio = canonical_frac / expected;

    const GrandCanonicalState gc = solve_fugacity(spectrum, t, n);
    const double gc_frac = (at_zero_mu - gc.state_occupation(1)) / at_zero_mu;

    out.detail << "T/Tc=" << x << ": canonical discrepancy " << canonical_frac << " vs T/N0 "
               << expected << " (ratio " << ratio << "; grand-canonical N1 ratio "
               << gc_frac / expected << "); ";
    out.require(ratio >= 0.5 && ratio <= 2.0,
                "canonical ratio in [0.5, 2] at T/Tc=" + std::to_string(x));
  }
  return out;
}

Outcome invariance() {
  Outcome out;
  struct Probe {
    std::int64_t n;
    double x;
  };
  const std::vector<Probe> probes = {{100, 0.5}, {1000, 0.6}, {1000, 1.2}, {10000, 0.8}};
  double shift = 0.0, doubling = 0.0, grid = 0.0, workers = 0.0;
  auto moments_dev = [](const CanonicalResult& a, const CanonicalResult& b) {
    return std::max({rel(a.n0_mean, b.n0_mean), rel(a.n0_second_moment, b.n0_second_moment),
                     rel(a.n1_mean, b.n1_mean), rel(a.n0_n1_mean, b.n0_n1_mean)});
  };
  for (const Probe& p : probes) {
    const double t = p.x * critical_temperature(TrapSpectrum(1), p.n);
    const int m = default_max_level(t);
    const TrapSpectrum spectrum(m, 1.0);
    const CanonicalResult ref = canonical_observables(spectrum, t, p.n);

    for (double offset : {0.5, 2.0}) {
      const ShiftInvarianceReport r = shift_invariance_check(spectrum, t, p.n, {}, 1.0, offset);
      shift = std::max(shift, r.max_relative_deviation);
    }

    QuadratureConfig doubled;
    doubled.m_max = 2 * m;
    doubling = std::max(doubling, moments_dev(ref, canonical_observables(spectrum, t, p.n, doubled)));

    QuadratureConfig finer;
    finer.intervals_per_oscillation = 2;
    grid = std::max(grid, moments_dev(ref, canonical_observables(spectrum, t, p.n, finer)));
    QuadratureConfig denser;
    denser.points_per_interval = 2 * QuadratureConfig{}.resolved_points_per_interval(p.n);
    grid = std::max(grid, moments_dev(ref, canonical_observables(spectrum, t, p.n, denser)));

    for (int threads : {2, 4}) {
      QuadratureConfig parallel;
      parallel.threads = threads;
      const CanonicalResult r = canonical_observables(spectrum, t, p.n, parallel);
      workers = std::max({workers, moments_dev(ref, r), rel(ref.log_z, r.log_z)});
    }
  }
  out.detail << "ground offset " << shift << ", m_max doubling " << doubling << ", grid "
             << grid << ", workers " << workers;
  out.require(shift <= 1e-8, "ground offset <= 1e-8");
  out.require(doubling <= 1e-8, "m_max doubling <= 1e-8");
  out.require(grid <= 1e-8, "grid refinement <= 1e-8");
  out.require(workers <= 1e-12, "worker count <= 1e-12");
  return out;
}

Outcome spot_values() {
  Outcome out;
  const TrapSpectrum s(1);
  const double tc = critical_temperature(s, 1000);
  const double prefactor = fluctuation_prefactor();
  out.require(std::abs(tc - 9.405) <= 1e-3, "Tc(1000)");
  // The exact value is 1.16980; the stated target 1.1696 +- 1e-4 is an arithmetic slip and
  // this check is left to fail.
  out.require(std::abs(prefactor - 1.1696) <= 1e-4, "prefactor 1.1696 +- 1e-4");

  // Crossover identity T/lambda_int = (T/eps)^3 at lambda_int/eps = (T/eps)^-2.
  double worst = 0.0;
  bool regime = true;
  for (double t : {2.0, 8.0, 10.0, 64.0}) {
    const InteractionParams p{1.0 / (t * t)};
    worst = std::max(worst, std::abs(t / p.pair_energy - t * t * t) / (t * t * t));
    const DampingCrossover c = damping_crossover(s, t, p);
    worst = std::max(worst, std::abs(c.scale_ratio - 1.0));
    regime = regime && c.regime == DampingRegime::interaction_dominates;
  }
  out.require(worst <= 4.0 * std::numeric_limits<double>::epsilon(), "crossover identity");
  out.require(regime, "boundary counts as interaction dominated");
  char buf[160];
  std::snprintf(buf, sizeof buf, "Tc(1000) = %.6f, prefactor = %.7f, crossover defect %.1e", tc,
                prefactor, worst);
  out.detail << buf;
  return out;
}

}  // namespace

// Usage: acceptance [--expect-fail 7,9]
// Every criterion is always evaluated and reported. The exit status is 0 when
// the set of failing criteria equals the --expect-fail list (empty by default).
int main(int argc, char** argv) {
  std::set<int> expected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--expect-fail" && i + 1 < argc) {
      std::stringstream list(argv[++i]);
      std::string item;
      while (std::getline(list, item, ',')) expected.insert(std::stoi(item));
    } else {
      std::fprintf(stderr, "usage: %s [--expect-fail i,j,...]\n", argv[0]);
      return 2;
    }
  }

  std::set<int> failed;
  auto report = [&](int id, const std::string& name, const std::function<Outcome()>& check) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail << "exception: " << e.what();
    }
    if (!o.passed) failed.insert(id);
    std::printf("%s criterion %d (%s): %s\n", o.passed ? "PASS" : "FAIL", id, name.c_str(),
                o.detail.str().c_str());
    std::fflush(stdout);
  };

  report(1, "oracle equivalence", oracle_equivalence);
  report(2, "enumeration equivalence", enumeration_equivalence);
  const FigureData data;
  report(3, "condensate fraction", [&] { return figure1(data); });
  report(4, "grand-canonical gap", [&] { return figure2(data); });
  report(5, "condensate fluctuation", [&] { return figure3(data); });
  report(6, "ground/first-level correlation", [&] { return figure4(data); });
  report(7, "first-level occupation", first_level_consistency);
  report(8, "invariance", invariance);
  report(9, "closed-form spot values", spot_values);

  std::printf("%zu of 9 criteria failed\n", failed.size());
  if (!expected.empty()) {
    std::printf("expected to fail:");
    for (int id : expected) std::printf(" %d", id);
    std::printf(" (%s)\n", failed == expected ? "matches" : "does not match");
  }
  return failed == expected ? 0 : 1;
}
