#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "bosecanon/log_complex.hpp"
#include "bosecanon/spectrum.hpp"

namespace bosecanon {

enum class TailMode {
  truncate,            ///< drop all levels above m_max
  maxwell_boltzmann,   ///< classical closed form for all levels above m_max
};

enum class ContourMode {
  /// Radius chosen from the grand-canonical saddle point (equivalently an
  /// automatic shift of the ground energy). Robust at any N and T.
  adaptive,
  /// Unit circle with the spectrum's own ground offset. Requires offset > 0
  /// and is only well conditioned when that offset is near the saddle.
  unit,
};

std::string to_string(TailMode mode);
std::string to_string(ContourMode mode);
TailMode parse_tail_mode(const std::string& text);
ContourMode parse_contour_mode(const std::string& text);

struct QuadratureConfig {
  /// Overrides spectrum.max_level() when set.
  std::optional<int> m_max;
  /// Overrides spectrum.ground_offset() when set.
  std::optional<double> ground_offset;
  /// Subdivision of the base interval width pi/(4N).
  int intervals_per_oscillation = 1;
  /// Equispaced midpoint nodes per interval; unset means 1 for N >= 1e4 and
  /// 4 otherwise.
  std::optional<int> points_per_interval;
  double convergence_rel_tol = 1e-12;
  /// Number of consecutive negligible intervals that ends the integration.
  int exit_window = 32;
  TailMode tail_mode = TailMode::maxwell_boltzmann;
  ContourMode contour = ContourMode::adaptive;
  /// Integrate only [0, pi] and double the real part. When false the full
  /// circle is sampled and the imaginary residual is measured directly.
  bool exploit_symmetry = true;
  /// Worker threads for the z grid; 0 means hardware concurrency.
  int threads = 1;

  void validate() const;
  int resolved_points_per_interval(std::int64_t n) const;
};

/// Spectrum the engine actually integrates: `spectrum` with the config's
/// truncation and ground offset overrides applied.
TrapSpectrum effective_spectrum(const TrapSpectrum& spectrum,
                                const QuadratureConfig& config);

struct IntegralDiagnostics {
  /// Relative imaginary part left in Z and in the observable ratios. With
  /// exploit_symmetry the conjugate-symmetry defect of mirrored samples in
  /// the first interval is reported instead.
  double imag_residual = 0.0;
  std::int64_t intervals_evaluated = 0;
  std::int64_t intervals_total = 0;
  bool early_exit = false;
  /// Share of the contour-mean particle number carried by the closed-form tail.
  double tail_share = 0.0;
  int m_max = 0;
  int points_per_interval = 0;
  /// exp(-gap) of the ground state on the integration contour.
  double contour_ground_fugacity = 0.0;
  /// sum |samples| / |sum samples| for Z: the roundoff amplification.
  double cancellation = 0.0;
};

/// Canonical expectation values at fixed N and T. n1 refers to one designated
/// state of the threefold-degenerate first excited level; n_e counts every
/// particle outside the ground state.
struct CanonicalResult {
  std::int64_t n = 0;
  double temperature = 0.0;
  /// log Z(N, T) with energies measured from zero (not from the ground level).
  double log_z = 0.0;
  double n0_mean = 0.0;
  double n0_second_moment = 0.0;
  double n1_mean = 0.0;
  double n0_n1_mean = 0.0;
  double ne_mean = 0.0;
  double ne_second_moment = 0.0;
  double ne_n1_mean = 0.0;
  IntegralDiagnostics diagnostics;

  double n0_variance_direct() const { return n0_second_moment - n0_mean * n0_mean; }
  double ne_variance() const { return ne_second_moment - ne_mean * ne_mean; }
  /// Var(n0) = Var(n_e) at fixed N; evaluated from whichever of n0 and n_e
  /// has the smaller mean, where the subtraction loses fewer digits.
  double n0_variance() const {
    return n0_mean <= ne_mean ? n0_variance_direct() : ne_variance();
  }
  double delta_n0() const;

  double covariance_01_direct() const { return n0_n1_mean - n0_mean * n1_mean; }
  /// <dn0 dn1> = -<dn_e dn1>.
  double covariance_01_complement() const { return -(ne_n1_mean - ne_mean * n1_mean); }
  double covariance_01() const {
    return n0_mean <= ne_mean ? covariance_01_direct() : covariance_01_complement();
  }
};

/// exp(i N z) * prod_{m=0}^{M} (1 - exp(-(eps0 + m eps)/T - i z))^{-g_m},
/// times the Maxwell-Boltzmann tail factor when the config asks for it, on
/// the unit circle. Throws DomainError at the z = 0 pole when eps0 = 0 and
/// ConvergenceError naming the level if the log-modulus is not finite.
LogComplex partition_integrand(const TrapSpectrum& spectrum, double t,
                               std::int64_t n, double z,
                               const QuadratureConfig& config);

/// exp(exp(-iz) exp(-eps0/T) sum_{m > m_max} g_m q^m), q = exp(-eps/T).
LogComplex mb_tail_factor(const TrapSpectrum& spectrum, double t, double z,
                          int m_max);

/// Partition function and occupation moments from the number-projection
/// integral. Throws ConvergenceError (with diagnostics in the message) when
/// the result is not trustworthy.
CanonicalResult canonical_observables(const TrapSpectrum& spectrum, double t,
                                      std::int64_t n,
                                      const QuadratureConfig& config = {});

struct ShiftInvarianceReport {
  double offset_a = 0.0;
  double offset_b = 0.0;
  /// Largest relative difference over n0, <n0^2>, n1, <n0 n1>.
  double max_relative_deviation = 0.0;
  /// |(log_z_a - log_z_b) - N (b - a)/T|, the exact shift of log Z.
  double log_z_shift_error = 0.0;
  double bound = 0.0;
  bool passed = false;
};

/// Runs the engine with ground offsets a and b and compares observables.
/// Passing requires the moment deviation <= 10 * convergence_rel_tol.
ShiftInvarianceReport shift_invariance_check(const TrapSpectrum& spectrum,
                                             double t, std::int64_t n,
                                             const QuadratureConfig& config,
                                             double offset_a, double offset_b);

}  // namespace bosecanon
