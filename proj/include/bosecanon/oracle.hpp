#pragma once

#include <cstdint>
#include <vector>

#include "bosecanon/canonical_integral.hpp"
#include "bosecanon/spectrum.hpp"

namespace bosecanon {

/// Which single-particle partition function Z1(k beta) the recursion uses.
enum class SingleParticleModel {
  full,               ///< untruncated oscillator, closed form
  truncated,          ///< levels 0..max_level only
  truncated_mb_tail,  ///< levels 0..max_level plus the classical tail
};

/// Model matching what the integral engine computes with a given tail mode.
SingleParticleModel model_for(TailMode mode);

/// Exact canonical partition functions Z(0..N) from
///   Z(k) = (1/k) sum_{j=1}^{k} Z1(j beta) Z(k - j),
/// stored as logarithms. All terms are positive, so the recursion is stable.
class RecursionTable {
 public:
  RecursionTable(const TrapSpectrum& spectrum, double t, std::int64_t n,
                 SingleParticleModel model);

  std::int64_t max_n() const noexcept { return static_cast<std::int64_t>(log_z_.size()) - 1; }
  double temperature() const noexcept { return temperature_; }
  const TrapSpectrum& spectrum() const noexcept { return spectrum_; }
  SingleParticleModel model() const noexcept { return model_; }

  double log_z(std::int64_t k) const;
  /// log Z1(j beta), j >= 1.
  double log_z1(std::int64_t j) const;
  /// log(Z(k) / Z(k-1)).
  double log_ratio(std::int64_t k) const { return log_z(k) - log_z(k - 1); }

  /// <n_E> for one Bose state of energy E in the N-particle system:
  /// sum_{k=1}^{N} exp(-k E/T) Z(N-k)/Z(N).
  double state_occupation(double state_energy, std::int64_t n) const;
  /// <n_E^2> = sum_k (2k - 1) exp(-k E/T) Z(N-k)/Z(N).
  double state_second_moment(double state_energy, std::int64_t n) const;
  /// Mean particle count in the classical tail (truncated_mb_tail only):
  /// c Z(N-1)/Z(N).
  double tail_occupation(std::int64_t n) const;

 private:
  TrapSpectrum spectrum_;
  double temperature_;
  SingleParticleModel model_;
  std::vector<double> log_z1_;  // index j - 1
  std::vector<double> log_z_;
};

RecursionTable recursion_partition(const TrapSpectrum& spectrum, double t,
                                   std::int64_t n,
                                   SingleParticleModel model = SingleParticleModel::full);

/// Exact observables of N bosons on a small explicit list of states.
struct EnumerationResult {
  double z = 0.0;
  std::int64_t configurations = 0;
  std::vector<double> mean;                 // <n_i>
  std::vector<std::vector<double>> second;  // <n_i n_j>
};

/// Expands the levels of `spectrum` into individual states.
std::vector<double> state_energies(const TrapSpectrum& spectrum);

/// Brute-force sum over every multiset of N particles on the given states.
/// Requires at most 8 states and N <= 6.
EnumerationResult enumerate_exact(const std::vector<double>& state_energies,
                                  double t, int n);

struct OccupationCheckReport {
  double n0_recursion = 0.0;
  double n0_integral = 0.0;
  double n1_recursion = 0.0;
  double n1_integral = 0.0;
  double max_relative_deviation = 0.0;
  /// |sum over all states of <n_state> - N| / N from the recursion.
  double sum_rule_residual = 0.0;
};

/// Compares the engine's <n0> and <n1> with the recursion identities. N <= 200.
OccupationCheckReport occupation_recursion_check(const TrapSpectrum& spectrum,
                                                 double t, std::int64_t n,
                                                 const QuadratureConfig& config = {});

}  // namespace bosecanon
