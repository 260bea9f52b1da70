#pragma once

#include <cstdint>
#include <numbers>
#include <vector>

namespace bosecanon {

inline constexpr double kZeta3 = 1.2020569031595942853997381615114;
inline constexpr double kPi = std::numbers::pi;

/// One energy level of a single-particle spectrum.
struct Level {
  double energy;
  std::int64_t degeneracy;
};

/// Single-particle spectrum of the isotropic 3D harmonic oscillator,
/// truncated at `max_level`. Level m has energy ground_offset + m * spacing
/// and (m+1)(m+2)/2 degenerate states.
class TrapSpectrum {
 public:
  explicit TrapSpectrum(int max_level, double ground_offset = 0.0,
                        double level_spacing = 1.0);

  int max_level() const noexcept { return max_level_; }
  double ground_offset() const noexcept { return ground_offset_; }
  double level_spacing() const noexcept { return level_spacing_; }

  /// Energy of level m. Throws std::out_of_range for m outside [0, max_level].
  double energy(int m) const;

  static constexpr std::int64_t degeneracy(int m) noexcept {
    const std::int64_t k = m;
    return (k + 1) * (k + 2) / 2;
  }

  /// Total number of single-particle states in levels 0..max_level.
  std::int64_t state_count() const noexcept;

  std::vector<Level> levels() const;

  TrapSpectrum with_max_level(int max_level) const {
    return TrapSpectrum(max_level, ground_offset_, level_spacing_);
  }
  TrapSpectrum with_ground_offset(double offset) const {
    return TrapSpectrum(max_level_, offset, level_spacing_);
  }

  bool operator==(const TrapSpectrum&) const = default;

 private:
  int max_level_;
  double ground_offset_;
  double level_spacing_;
};

/// Number of states in levels 0..m, i.e. (m+1)(m+2)(m+3)/6.
constexpr std::int64_t cumulative_state_count(int m) noexcept {
  const std::int64_t k = m;
  return (k + 1) * (k + 2) * (k + 3) / 6;
}

double level_energy(const TrapSpectrum& spectrum, int m);

/// T_c = N^{1/3} zeta(3)^{-1/3} * spacing.
double critical_temperature(const TrapSpectrum& spectrum, std::int64_t n);

/// Sum over m > max_level of degeneracy(m) * q^m for 0 <= q < 1, evaluated
/// in closed form without cancellation against the full sum (1-q)^{-3}.
double degeneracy_tail_sum(double q, int max_level);

/// Default truncation for temperature t (in units of the level spacing):
/// ceil(14 t) + 24. With the classical tail closure the neglected quantum
/// correction above this level is below ~1e-10 of the excited population.
int default_max_level(double t_over_spacing);

/// Particle number and temperature of a fixed-N ensemble.
struct EnsembleParams {
  std::int64_t particle_number;
  double temperature;

  EnsembleParams(std::int64_t n, double t);
  static EnsembleParams from_t_over_tc(const TrapSpectrum& spectrum,
                                       std::int64_t n, double t_over_tc);

  double t_over_tc(const TrapSpectrum& spectrum) const;
};

}  // namespace bosecanon
