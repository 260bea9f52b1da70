#pragma once

#include <cstdint>
#include <optional>

#include "bosecanon/spectrum.hpp"

namespace bosecanon {

/// Grand-canonical ideal Bose gas in a trap at fixed fugacity and temperature.
///
/// The state is stored as the reduced gap s = (eps_0 - mu)/T > 0 between the
/// chemical potential and the lowest level, which stays well conditioned when
/// the ground state is macroscopically occupied (s ~ 1/N0). The fugacity is
/// lambda = exp(mu/T) = exp(eps_0/T - s).
///
/// Levels above spectrum.max_level() are accounted for by a Boltzmann
/// (first order in fugacity) tail, unless `include_tail` is false.
class GrandCanonicalState {
 public:
  GrandCanonicalState(TrapSpectrum spectrum, double temperature,
                      double ground_gap, bool include_tail = true,
                      std::optional<std::int64_t> target_n = std::nullopt);

  /// Builds the state from a fugacity in (0, exp(eps_0/T)).
  static GrandCanonicalState from_fugacity(TrapSpectrum spectrum,
                                           double temperature, double fugacity,
                                           bool include_tail = true);

  const TrapSpectrum& spectrum() const noexcept { return spectrum_; }
  double temperature() const noexcept { return temperature_; }
  double ground_gap() const noexcept { return ground_gap_; }
  bool include_tail() const noexcept { return include_tail_; }
  std::optional<std::int64_t> target_n() const noexcept { return target_n_; }

  double fugacity() const;
  double log_fugacity() const;
  double chemical_potential() const;

  /// Mean occupation of one state of level m.
  double state_occupation(int m) const;
  double ground_occupation() const { return state_occupation(0); }
  /// sqrt(N0 (N0 + 1)).
  double ground_fluctuation() const;

  /// Mean number of particles in all levels above max_level (Boltzmann tail).
  double tail_particles() const;
  /// Mean number of particles outside the ground state.
  double excited_particles() const;
  double total_particles() const;
  /// d<N>/d(log lambda) = Var(N) for the grand-canonical distribution.
  double total_variance() const;

  /// <dn_i dn_j> between two distinct states: identically zero.
  static constexpr double cross_covariance() noexcept { return 0.0; }

 private:
  TrapSpectrum spectrum_;
  double temperature_;
  double ground_gap_;
  bool include_tail_;
  std::optional<std::int64_t> target_n_;
};

/// Mean occupation 1/(exp((E - mu)/T) - 1) of one state of energy E.
/// Throws DomainError if E <= mu.
double mean_occupation(const GrandCanonicalState& state, double level_energy);

/// sqrt(n (n + 1)).
double occupation_fluctuation(double mean_occupation);

/// Fugacity for which the summed mean occupation of all states equals
/// n_target to relative accuracy 1e-10 (levels up to max_level plus the
/// Boltzmann tail when include_tail is set).
GrandCanonicalState solve_fugacity(const TrapSpectrum& spectrum, double t,
                                   std::int64_t n_target,
                                   bool include_tail = true);

/// zeta(3) (T/eps)^3.
double excited_count_limit(const TrapSpectrum& spectrum, double t);
/// sqrt(pi^2/6 (T/eps)^3).
double excited_fluctuation_limit(const TrapSpectrum& spectrum, double t);
/// pi^4/30 T^4 / eps^3 (condensed regime).
double total_energy(const TrapSpectrum& spectrum, double t);
/// pi^4/(30 zeta(3)) T N_e, identical to total_energy when N_e is the
/// excited-count limit.
double total_energy_from_excited(double t, double excited_count);
/// sqrt(T^2 d<E>/dT) using the analytic T^4 law.
double energy_fluctuation(const TrapSpectrum& spectrum, double t);

}  // namespace bosecanon
