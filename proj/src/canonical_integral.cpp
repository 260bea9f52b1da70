#include "bosecanon/canonical_integral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "bosecanon/errors.hpp"
#include "bosecanon/grand_canonical.hpp"
#include "bosecanon/parallel.hpp"

namespace bosecanon {
namespace {

using cplx = std::complex<double>;

// Aliasing of the sampled circle is bounded by a0^K for K nodes on the full
// circle, with a0 the contour value of the ground-state factor. Keep it below
// exp(-36) ~ 2e-16.
constexpr double kAliasExponent = 36.0;

// Results whose Z sum lost more than this factor to cancellation have fewer
// than ~8 significant digits and are rejected.
constexpr double kMaxCancellation = 1e8;

constexpr double kMaxImagResidual = 1e-8;

enum Obs : int { kZ = 0, kN0, kN0Sq, kN1, kN0N1, kNe, kNeSq, kNeN1, kObsCount };

using ObsSums = std::array<cplx, kObsCount>;

struct IntervalSums {
  ObsSums values{};
  double abs_z = 0.0;
  double symmetry_defect = 0.0;
};

// Trigonometric data of one node z in (0, 2 pi).
struct Node {
  double cos_z;
  double sin_z;
  double two_sin2_half;  // 1 - cos z, computed without cancellation
  double phase_n;        // N z reduced mod 2 pi
};

// Integrand on the circle |w| = rho, in terms of the contour values
// a_m = rho exp(-(eps0 + m eps)/T) of each level.
class ContourSampler {
 public:
  ContourSampler(const TrapSpectrum& spectrum, double t, double ground_gap,
                 TailMode tail_mode) {
    const double step = spectrum.level_spacing() / t;
    const int levels = spectrum.max_level() + 1;
    a_.resize(levels);
    one_minus_a_.resize(levels);
    g_.resize(levels);
    for (int m = 0; m < levels; ++m) {
      const double x = ground_gap + m * step;
      a_[m] = std::exp(-x);
      one_minus_a_[m] = -std::expm1(-x);
      g_[m] = static_cast<double>(TrapSpectrum::degeneracy(m));
    }
    if (tail_mode == TailMode::maxwell_boltzmann) {
      tail_ = std::exp(-ground_gap) *
              degeneracy_tail_sum(std::exp(-step), spectrum.max_level());
    }
    // |integrand| peaks at z = 0, where every factor is real and positive.
    double log_peak = tail_;
    for (int m = 0; m < levels; ++m) log_peak -= g_[m] * std::log(one_minus_a_[m]);
    log_peak_ = log_peak;
  }

  double log_peak() const { return log_peak_; }
  double tail_coefficient() const { return tail_; }
  double ground_value() const { return a_[0]; }

  // Integrand / exp(log_peak) and the observable weights at one node.
  ObsSums sample(const Node& node) const {
    double log_mod = -log_peak_;
    double phase = node.phase_n;
    const cplx rot(node.cos_z, -node.sin_z);  // exp(-iz)
    cplx r0{}, r1{}, s1{}, s2{};
    const int levels = static_cast<int>(a_.size());
    for (int m = 0; m < levels; ++m) {
      const double a = a_[m];
      // 1 - a exp(-iz)
      const double re = one_minus_a_[m] + a * node.two_sin2_half;
      const double im = a * node.sin_z;
      const double log_abs = a < 0.5 ? 0.5 * std::log1p(a * (a - 2.0 * node.cos_z))
                                     : 0.5 * std::log(re * re + im * im);
      log_mod -= g_[m] * log_abs;
      phase -= g_[m] * std::atan2(im, re);
      const cplx r = (a * rot) / cplx(re, im);  // u / (1 - u)
      if (m == 0) {
        r0 = r;
      } else {
        if (m == 1) r1 = r;
        s1 += g_[m] * r;
        s2 += g_[m] * (r * (1.0 + r));
      }
    }
    if (tail_ != 0.0) {
      const cplx c = tail_ * rot;
      log_mod += c.real();
      phase += c.imag();
      s1 += c;
      s2 += c;
    }
    const cplx v = std::polar(std::exp(log_mod), std::remainder(phase, 2.0 * kPi));
    ObsSums out;
    out[kZ] = v;
    out[kN0] = v * r0;
    out[kN0Sq] = v * (r0 * (1.0 + 2.0 * r0));
    out[kN1] = v * r1;
    out[kN0N1] = v * (r0 * r1);
    out[kNe] = v * s1;
    out[kNeSq] = v * (s1 * s1 + s2);
    out[kNeN1] = v * (r1 * s1 + r1 * (1.0 + r1));
    return out;
  }

 private:
  std::vector<double> a_;
  std::vector<double> one_minus_a_;
  std::vector<double> g_;
  double tail_ = 0.0;
  double log_peak_ = 0.0;
};

// Node k of K = 8 N ipo p equispaced midpoint nodes on (0, 2 pi):
// z_k = (2k + 1) pi / K.
struct NodeGrid {
  std::int64_t n;
  std::int64_t nodes_per_circle;   // K
  std::int64_t phase_period;       // 2K / N = 16 ipo p, period of (2k+1) in N z
  int points_per_interval;

  Node node(std::int64_t k) const {
    const double z = static_cast<double>(2 * k + 1) * kPi /
                     static_cast<double>(nodes_per_circle);
    const double half = 0.5 * z;
    const double sh = std::sin(half);
    const std::int64_t reduced = (2 * k + 1) % phase_period;
    double phase = static_cast<double>(reduced) * 2.0 * kPi /
                   static_cast<double>(phase_period);
    if (phase > kPi) phase -= 2.0 * kPi;
    return {std::cos(z), std::sin(z), 2.0 * sh * sh, phase};
  }
};

IntervalSums evaluate_interval(const ContourSampler& sampler,
                               const NodeGrid& grid, std::int64_t interval,
                               bool exploit_symmetry, bool measure_defect) {
  IntervalSums out;
  const int p = grid.points_per_interval;
  for (int j = 0; j < p; ++j) {
    const std::int64_t k = interval * p + j;
    const ObsSums v = sampler.sample(grid.node(k));
    out.abs_z += (exploit_symmetry ? 2.0 : 1.0) * std::abs(v[kZ]);
    const bool need_mirror = !exploit_symmetry || measure_defect;
    ObsSums w{};
    if (need_mirror) {
      // z' = 2 pi - z, evaluated independently from its own node index.
      w = sampler.sample(grid.node(grid.nodes_per_circle - 1 - k));
    }
    if (measure_defect && std::abs(v[kZ]) > 0.0) {
      for (int o = 0; o < kObsCount; ++o) {
        const double scale = std::max(std::abs(v[o]), std::abs(v[kZ]));
        out.symmetry_defect =
            std::max(out.symmetry_defect, std::abs(w[o] - std::conj(v[o])) / scale);
      }
    }
    for (int o = 0; o < kObsCount; ++o) {
      if (exploit_symmetry) {
        out.values[o] += cplx(2.0 * v[o].real(), 0.0);
      } else {
        out.values[o] += v[o] + w[o];
      }
    }
    if (!exploit_symmetry) out.abs_z += std::abs(w[kZ]);
  }
  return out;
}

double contour_gap(const TrapSpectrum& spectrum, double t, std::int64_t n,
                   const QuadratureConfig& config, std::int64_t nodes) {
  if (config.contour == ContourMode::unit) {
    const double gap = spectrum.ground_offset() / t;
    if (!(gap > 0.0)) {
      throw ConfigError(
          "unit contour needs a positive ground offset (pole at z = 0 otherwise)");
    }
    return gap;
  }
  const GrandCanonicalState saddle = solve_fugacity(
      spectrum, t, n, config.tail_mode == TailMode::maxwell_boltzmann);
  return std::max(saddle.ground_gap(), kAliasExponent / static_cast<double>(nodes));
}

std::string describe(const TrapSpectrum& spectrum, double t, std::int64_t n,
                     const IntegralDiagnostics& d) {
  std::ostringstream msg;
  msg << "N=" << n << " T=" << t << " m_max=" << spectrum.max_level()
      << " ground_offset=" << spectrum.ground_offset()
      << " intervals=" << d.intervals_evaluated << "/" << d.intervals_total
      << " contour_a0=" << d.contour_ground_fugacity
      << " cancellation=" << d.cancellation << " imag_residual=" << d.imag_residual;
  return msg.str();
}

}  // namespace

std::string to_string(TailMode mode) {
  return mode == TailMode::truncate ? "truncate" : "mb";
}

std::string to_string(ContourMode mode) {
  return mode == ContourMode::adaptive ? "adaptive" : "unit";
}

TailMode parse_tail_mode(const std::string& text) {
  if (text == "truncate") return TailMode::truncate;
  if (text == "mb" || text == "maxwell_boltzmann") return TailMode::maxwell_boltzmann;
  throw ConfigError("unknown tail mode '" + text + "' (expected truncate|mb)");
}

ContourMode parse_contour_mode(const std::string& text) {
  if (text == "adaptive") return ContourMode::adaptive;
  if (text == "unit") return ContourMode::unit;
  throw ConfigError("unknown contour mode '" + text + "' (expected adaptive|unit)");
}

void QuadratureConfig::validate() const {
  if (m_max && *m_max < 1) throw ConfigError("m_max must be >= 1");
  if (ground_offset && !(*ground_offset >= 0.0)) {
    throw ConfigError("ground_offset must be >= 0");
  }
  if (intervals_per_oscillation < 1) {
    throw ConfigError("intervals_per_oscillation must be >= 1");
  }
  if (points_per_interval && *points_per_interval < 1) {
    throw ConfigError("points_per_interval must be >= 1");
  }
  if (!(convergence_rel_tol > 0.0)) throw ConfigError("convergence_rel_tol must be > 0");
  if (exit_window < 1) throw ConfigError("exit_window must be >= 1");
  if (threads < 0) throw ConfigError("threads must be >= 0");
}

int QuadratureConfig::resolved_points_per_interval(std::int64_t n) const {
  if (points_per_interval) return *points_per_interval;
  return n >= 10000 ? 1 : 4;
}

TrapSpectrum effective_spectrum(const TrapSpectrum& spectrum,
                                const QuadratureConfig& config) {
  return TrapSpectrum(config.m_max.value_or(spectrum.max_level()),
                      config.ground_offset.value_or(spectrum.ground_offset()),
                      spectrum.level_spacing());
}

double CanonicalResult::delta_n0() const {
  return std::sqrt(std::max(0.0, n0_variance()));
}

LogComplex mb_tail_factor(const TrapSpectrum& spectrum, double t, double z,
                          int m_max) {
  if (!(t > 0.0)) throw DomainError("temperature must be positive");
  const double q = std::exp(-spectrum.level_spacing() / t);
  const double c =
      std::exp(-spectrum.ground_offset() / t) * degeneracy_tail_sum(q, m_max);
  return {c * std::cos(z), -c * std::sin(z)};
}

LogComplex partition_integrand(const TrapSpectrum& spectrum, double t,
                               std::int64_t n, double z,
                               const QuadratureConfig& config) {
  config.validate();
  if (!(t > 0.0)) throw DomainError("temperature must be positive");
  if (n < 1) throw DomainError("particle number must be >= 1");
  if (!(z >= -kPi && z <= kPi)) throw DomainError("z must lie in [-pi, pi]");
  const TrapSpectrum spec = effective_spectrum(spectrum, config);
  if (spec.ground_offset() == 0.0 && z == 0.0) {
    throw DomainError("integrand is singular at z = 0 for zero ground offset");
  }
  const cplx rot = std::polar(1.0, -z);
  LogComplex value(0.0, std::remainder(static_cast<double>(n) * z, 2.0 * kPi));
  for (const Level& level : spec.levels()) {
    const double x = std::exp(-level.energy / t);
    const cplx log_factor = log_one_minus(x * rot);
    value.add_log(-static_cast<double>(level.degeneracy) * log_factor);
    if (!value.finite()) {
      const int m = static_cast<int>(std::lround(
          (level.energy - spec.ground_offset()) / spec.level_spacing()));
      std::ostringstream msg;
      msg << "integrand log-modulus not representable at level m=" << m
          << " (z=" << z << ", T=" << t << ")";
      throw ConvergenceError(msg.str());
    }
  }
  if (config.tail_mode == TailMode::maxwell_boltzmann) {
    value *= mb_tail_factor(spec, t, z, spec.max_level());
  }
  return value;
}

CanonicalResult canonical_observables(const TrapSpectrum& spectrum, double t,
                                      std::int64_t n,
                                      const QuadratureConfig& config) {
  config.validate();
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("temperature must be positive");
  if (n < 1) throw DomainError("particle number must be >= 1");
  const TrapSpectrum spec = effective_spectrum(spectrum, config);
  if (spec.max_level() < 1) throw ConfigError("m_max must be >= 1");

  const int p = config.resolved_points_per_interval(n);
  const std::int64_t intervals_total = 4 * n * config.intervals_per_oscillation;
  const NodeGrid grid{n, 2 * intervals_total * p,
                      16LL * config.intervals_per_oscillation * p, p};

  const double gap = contour_gap(spec, t, n, config, grid.nodes_per_circle);
  const ContourSampler sampler(spec, t, gap, config.tail_mode);

  IntegralDiagnostics diag;
  diag.intervals_total = intervals_total;
  diag.m_max = spec.max_level();
  diag.points_per_interval = p;
  diag.contour_ground_fugacity = sampler.ground_value();

  std::array<CompensatedSum<double>, kObsCount> acc;
  double abs_sum = 0.0;
  int quiet = 0;
  bool done = false;
  const int threads = resolve_thread_count(config.threads);
  const std::int64_t batch_size = 256LL * threads;
  std::vector<IntervalSums> batch;

  for (std::int64_t start = 0; start < intervals_total && !done; start += batch_size) {
    const std::int64_t count = std::min(batch_size, intervals_total - start);
    batch.assign(static_cast<std::size_t>(count), IntervalSums{});
    parallel_for(count, threads, [&](std::int64_t i) {
      const std::int64_t interval = start + i;
      batch[static_cast<std::size_t>(i)] = evaluate_interval(
          sampler, grid, interval, config.exploit_symmetry,
          config.exploit_symmetry && interval == 0);
    });
    // Reduction and the exit test run in interval order, so the result does
    // not depend on the worker count.
    for (std::int64_t i = 0; i < count; ++i) {
      const IntervalSums& part = batch[static_cast<std::size_t>(i)];
      diag.imag_residual = std::max(diag.imag_residual, part.symmetry_defect);
      abs_sum += part.abs_z;
      bool negligible = true;
      for (int o = 0; o < kObsCount; ++o) {
        acc[o].add(part.values[o]);
        if (!(std::abs(part.values[o]) <
              config.convergence_rel_tol * std::abs(acc[o].value()))) {
          negligible = false;
        }
      }
      diag.intervals_evaluated = start + i + 1;
      quiet = negligible ? quiet + 1 : 0;
      if (quiet >= config.exit_window) {
        diag.early_exit = diag.intervals_evaluated < intervals_total;
        done = true;
        break;
      }
    }
  }

  ObsSums total;
  for (int o = 0; o < kObsCount; ++o) total[o] = acc[o].value();
  const double z_sum = total[kZ].real();
  diag.cancellation = z_sum > 0.0 ? abs_sum / z_sum : INFINITY;

  CanonicalResult result;
  result.n = n;
  result.temperature = t;
  std::array<double, kObsCount> ratio{};
  ratio[kZ] = 1.0;
  for (int o = 1; o < kObsCount; ++o) {
    const cplx r = total[o] / total[kZ];
    ratio[o] = r.real();
    if (!config.exploit_symmetry && r.real() != 0.0) {
      diag.imag_residual = std::max(diag.imag_residual, std::abs(r.imag() / r.real()));
    }
  }
  if (!config.exploit_symmetry) {
    diag.imag_residual =
        std::max(diag.imag_residual, std::abs(total[kZ].imag() / total[kZ].real()));
  }

  const double nd = static_cast<double>(n);
  result.log_z = std::log(z_sum / static_cast<double>(grid.nodes_per_circle)) +
                 sampler.log_peak() + nd * gap - nd * spec.ground_offset() / t;
  result.n0_mean = ratio[kN0];
  result.n0_second_moment = ratio[kN0Sq];
  result.n1_mean = ratio[kN1];
  result.n0_n1_mean = ratio[kN0N1];
  result.ne_mean = ratio[kNe];
  result.ne_second_moment = ratio[kNeSq];
  result.ne_n1_mean = ratio[kNeN1];
  diag.tail_share = sampler.tail_coefficient() / nd;
  result.diagnostics = diag;

  bool finite = std::isfinite(result.log_z);
  for (int o = 1; o < kObsCount; ++o) finite = finite && std::isfinite(ratio[o]);
  if (!(z_sum > 0.0) || !finite) {
    throw ConvergenceError("non-finite or nonpositive partition integral: " +
                           describe(spec, t, n, diag));
  }
  if (diag.cancellation > kMaxCancellation) {
    throw ConvergenceError("partition integral lost too many digits to cancellation: " +
                           describe(spec, t, n, diag));
  }
  if (diag.imag_residual > kMaxImagResidual) {
    throw ConvergenceError("imaginary residual exceeds tolerance: " +
                           describe(spec, t, n, diag));
  }
  const double slack = 1e-6;
  if (result.n0_mean < -slack * nd || result.n0_mean > nd * (1.0 + slack) ||
      result.n0_variance() < -slack * std::max(1.0, result.n0_second_moment)) {
    throw ConvergenceError("occupation moments out of physical bounds: " +
                           describe(spec, t, n, diag));
  }
  return result;
}

ShiftInvarianceReport shift_invariance_check(const TrapSpectrum& spectrum,
                                             double t, std::int64_t n,
                                             const QuadratureConfig& config,
                                             double offset_a, double offset_b) {
  if (!(offset_a > 0.0) || !(offset_b > 0.0)) {
    throw DomainError("shift check needs positive ground offsets");
  }
  QuadratureConfig ca = config;
  QuadratureConfig cb = config;
  ca.ground_offset = offset_a;
  cb.ground_offset = offset_b;
  const CanonicalResult ra = canonical_observables(spectrum, t, n, ca);
  const CanonicalResult rb = canonical_observables(spectrum, t, n, cb);

  auto rel = [](double x, double y) {
    const double scale = std::max(std::abs(x), std::abs(y));
    return scale == 0.0 ? 0.0 : std::abs(x - y) / scale;
  };
  ShiftInvarianceReport report;
  report.offset_a = offset_a;
  report.offset_b = offset_b;
  report.max_relative_deviation =
      std::max({rel(ra.n0_mean, rb.n0_mean),
                rel(ra.n0_second_moment, rb.n0_second_moment),
                rel(ra.n1_mean, rb.n1_mean), rel(ra.n0_n1_mean, rb.n0_n1_mean)});
  report.log_z_shift_error = std::abs((ra.log_z - rb.log_z) -
                                      static_cast<double>(n) * (offset_b - offset_a) / t);
  report.bound = 10.0 * config.convergence_rel_tol;
  report.passed = report.max_relative_deviation <= report.bound;
  return report;
}

}  // namespace bosecanon
