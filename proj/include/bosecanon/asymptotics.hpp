#pragma once

#include <cstdint>
#include <string>

#include "bosecanon/spectrum.hpp"

namespace bosecanon {

/// max(0, 1 - (T/Tc)^3).
double condensate_fraction_limit(double t_over_tc);

/// (pi^2 / (6 zeta(3)))^{1/2}.
double fluctuation_prefactor();

/// Large-N estimate of dN0/N0:
///   N^{-1/2} (T/Tc)^{3/2} / (1 - (T/Tc)^3) * fluctuation_prefactor().
/// DomainError unless 0 < T/Tc < 1.
double delta_n0_fraction_limit(std::int64_t n, double t_over_tc);

/// Large-N estimate of <dn0 dn1>/(N0 N1):
///   -N^{-2/3} (T/Tc) / (1 - (T/Tc)^3) * zeta(3)^{-1/3}.
/// DomainError unless 0 < T/Tc < 1.
double correlation_limit(std::int64_t n, double t_over_tc);

/// -(dN1/dlambda) / (dN_e/dlambda) at lambda = 1 (chemical potential at the
/// ground level), from the level sums of the untruncated oscillator:
///   -N1 (N1 + 1) / sum_{m>=1} g_m N_m (N_m + 1),  N_m = 1/(exp(m eps/T) - 1).
/// See docs/correlation_transfer.md for the derivation.
double correlation_transfer_ratio(const TrapSpectrum& spectrum, double t);

/// T/eps -> infinity form of correlation_transfer_ratio: -6 / (pi^2 T/eps).
double correlation_transfer_ratio_limit(const TrapSpectrum& spectrum, double t);

/// Repulsive-interaction parameters. `pair_energy` is the two-particle
/// contribution to the ground-state energy, written lambda_int to keep it
/// apart from the fugacity. In oscillator units lambda_int = a / sqrt(2 pi)
/// for scattering length a.
struct InteractionParams {
  double pair_energy = 0.0;

  static InteractionParams from_scattering_length(double a);
  double scattering_length() const;
};

/// sqrt(T / lambda_int): width of the Gaussian condensate-number distribution.
double interacting_condensate_fluctuation(double t, const InteractionParams& params);
/// mu / (2 lambda_int): its center, for mu > 0.
double interacting_condensate_mean(double mu, const InteractionParams& params);

enum class DampingRegime { fixed_n_dominates, interaction_dominates };

std::string to_string(DampingRegime regime);

struct DampingCrossover {
  DampingRegime regime;
  /// sqrt(T/lambda_int) / sqrt((T/eps)^3); below 1 the interaction wins.
  double scale_ratio;
};

/// Interaction damping dominates iff lambda_int/eps >= (T/eps)^{-2}.
DampingCrossover damping_crossover(const TrapSpectrum& spectrum, double t,
                                   const InteractionParams& params);

}  // namespace bosecanon
