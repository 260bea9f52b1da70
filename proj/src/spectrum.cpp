#include "bosecanon/spectrum.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bosecanon/errors.hpp"

namespace bosecanon {

TrapSpectrum::TrapSpectrum(int max_level, double ground_offset,
                           double level_spacing)
    : max_level_(max_level),
      ground_offset_(ground_offset),
      level_spacing_(level_spacing) {
  if (max_level < 0) throw DomainError("max_level must be nonnegative");
  if (!(level_spacing > 0.0) || !std::isfinite(level_spacing)) {
    throw DomainError("level_spacing must be positive and finite");
  }
  if (!(ground_offset >= 0.0) || !std::isfinite(ground_offset)) {
    throw DomainError("ground_offset must be nonnegative and finite");
  }
}

double TrapSpectrum::energy(int m) const {
  if (m < 0 || m > max_level_) {
    throw std::out_of_range("level index " + std::to_string(m) +
                            " outside [0, " + std::to_string(max_level_) +
                            "]");
  }
  return ground_offset_ + m * level_spacing_;
}

std::int64_t TrapSpectrum::state_count() const noexcept {
  return cumulative_state_count(max_level_);
}

std::vector<Level> TrapSpectrum::levels() const {
  std::vector<Level> out;
  out.reserve(static_cast<std::size_t>(max_level_) + 1);
  for (int m = 0; m <= max_level_; ++m) out.push_back({energy(m), degeneracy(m)});
  return out;
}

double level_energy(const TrapSpectrum& spectrum, int m) {
  return spectrum.energy(m);
}

double critical_temperature(const TrapSpectrum& spectrum, std::int64_t n) {
  if (n < 1) throw DomainError("particle number must be >= 1");
  return std::cbrt(static_cast<double>(n) / kZeta3) * spectrum.level_spacing();
}

double degeneracy_tail_sum(double q, int max_level) {
  if (!(q >= 0.0 && q < 1.0)) throw DomainError("tail ratio must lie in [0, 1)");
  if (q == 0.0) return 0.0;
  // Shift m = max_level + 1 + j and split C(j + a, 2) = C(a, 2) + a j + C(j, 2)
  // with a = max_level + 3; each piece is a geometric-type series in q.
  const double a = static_cast<double>(max_level) + 3.0;
  const double one_minus_q = -std::expm1(std::log(q));
  const double lead = std::exp((max_level + 1.0) * std::log(q));
  return lead * (0.5 * a * (a - 1.0) / one_minus_q +
                 a * q / (one_minus_q * one_minus_q) +
                 q * q / (one_minus_q * one_minus_q * one_minus_q));
}

int default_max_level(double t_over_spacing) {
  if (!(t_over_spacing > 0.0)) throw DomainError("temperature must be positive");
  return static_cast<int>(std::ceil(14.0 * t_over_spacing)) + 24;
}

EnsembleParams::EnsembleParams(std::int64_t n, double t)
    : particle_number(n), temperature(t) {
  if (n < 1) throw DomainError("particle number must be >= 1");
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("temperature must be positive");
}

EnsembleParams EnsembleParams::from_t_over_tc(const TrapSpectrum& spectrum,
                                              std::int64_t n,
                                              double t_over_tc) {
  return EnsembleParams(n, t_over_tc * critical_temperature(spectrum, n));
}

double EnsembleParams::t_over_tc(const TrapSpectrum& spectrum) const {
  return temperature / critical_temperature(spectrum, particle_number);
}

}  // namespace bosecanon
