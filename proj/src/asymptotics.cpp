#include "bosecanon/asymptotics.hpp"

#include <cmath>
#include <limits>

#include "bosecanon/errors.hpp"

namespace bosecanon {
namespace {

void require_condensed(double t_over_tc) {
  if (!(t_over_tc > 0.0 && t_over_tc < 1.0)) {
    throw DomainError("large-N estimate needs 0 < T/Tc < 1");
  }
}

}  // namespace

double condensate_fraction_limit(double t_over_tc) {
  if (!(t_over_tc >= 0.0)) throw DomainError("T/Tc must be nonnegative");
  return std::max(0.0, 1.0 - t_over_tc * t_over_tc * t_over_tc);
}

double fluctuation_prefactor() { return std::sqrt(kPi * kPi / (6.0 * kZeta3)); }

double delta_n0_fraction_limit(std::int64_t n, double t_over_tc) {
  require_condensed(t_over_tc);
  if (n < 1) throw DomainError("particle number must be >= 1");
  const double cube = t_over_tc * t_over_tc * t_over_tc;
  return std::pow(t_over_tc, 1.5) / (1.0 - cube) * fluctuation_prefactor() /
         std::sqrt(static_cast<double>(n));
}

double correlation_limit(std::int64_t n, double t_over_tc) {
  require_condensed(t_over_tc);
  if (n < 1) throw DomainError("particle number must be >= 1");
  const double cube = t_over_tc * t_over_tc * t_over_tc;
  return -std::pow(static_cast<double>(n), -2.0 / 3.0) * t_over_tc / (1.0 - cube) /
         std::cbrt(kZeta3);
}

double correlation_transfer_ratio(const TrapSpectrum& spectrum, double t) {
  if (!(t > 0.0)) throw DomainError("temperature must be positive");
  const double step = spectrum.level_spacing() / t;
  const double n1 = 1.0 / std::expm1(step);
  double excited_variance = 0.0;
  for (int m = 1;; ++m) {
    const double occ = 1.0 / std::expm1(m * step);
    const double term = static_cast<double>(TrapSpectrum::degeneracy(m)) * occ * (occ + 1.0);
    excited_variance += term;
    if (term < 1e-18 * excited_variance && m * step > 1.0) break;
  }
  return -n1 * (n1 + 1.0) / excited_variance;
}

double correlation_transfer_ratio_limit(const TrapSpectrum& spectrum, double t) {
  if (!(t > 0.0)) throw DomainError("temperature must be positive");
  return -6.0 / (kPi * kPi * t / spectrum.level_spacing());
}

InteractionParams InteractionParams::from_scattering_length(double a) {
  return {a / std::sqrt(2.0 * kPi)};
}

double InteractionParams::scattering_length() const {
  return pair_energy * std::sqrt(2.0 * kPi);
}

double interacting_condensate_fluctuation(double t, const InteractionParams& params) {
  if (!(params.pair_energy > 0.0)) throw DomainError("pair energy must be positive");
  if (!(t > 0.0)) throw DomainError("temperature must be positive");
  return std::sqrt(t / params.pair_energy);
}

double interacting_condensate_mean(double mu, const InteractionParams& params) {
  if (!(params.pair_energy > 0.0)) throw DomainError("pair energy must be positive");
  if (!(mu > 0.0)) throw DomainError("chemical potential must be positive");
  return mu / (2.0 * params.pair_energy);
}

std::string to_string(DampingRegime regime) {
  return regime == DampingRegime::fixed_n_dominates ? "fixed_n_dominates"
                                                    : "interaction_dominates";
}

DampingCrossover damping_crossover(const TrapSpectrum& spectrum, double t,
                                   const InteractionParams& params) {
  if (!(t > 0.0)) throw DomainError("temperature must be positive");
  if (!(params.pair_energy >= 0.0)) throw DomainError("pair energy must be >= 0");
  const double r = t / spectrum.level_spacing();
  if (params.pair_energy == 0.0) {
    return {DampingRegime::fixed_n_dominates, std::numeric_limits<double>::infinity()};
  }
  const double ratio = std::sqrt(t / params.pair_energy / (r * r * r));
  const double lambda_over_eps = params.pair_energy / spectrum.level_spacing();
  const DampingRegime regime = lambda_over_eps >= 1.0 / (r * r)
                                   ? DampingRegime::interaction_dominates
                                   : DampingRegime::fixed_n_dominates;
  return {regime, ratio};
}

}  // namespace bosecanon
