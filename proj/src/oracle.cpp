#include "bosecanon/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "bosecanon/errors.hpp"

namespace bosecanon {
namespace {

double log_sum_exp(const std::vector<double>& terms) {
  const double top = *std::max_element(terms.begin(), terms.end());
  if (!std::isfinite(top)) return top;
  double sum = 0.0;
  for (double x : terms) sum += std::exp(x - top);
  return top + std::log(sum);
}

}  // namespace

SingleParticleModel model_for(TailMode mode) {
  return mode == TailMode::truncate ? SingleParticleModel::truncated
                                    : SingleParticleModel::truncated_mb_tail;
}

RecursionTable::RecursionTable(const TrapSpectrum& spectrum, double t,
                               std::int64_t n, SingleParticleModel model)
    : spectrum_(spectrum), temperature_(t), model_(model) {
  if (n < 1) throw DomainError("particle number must be >= 1");
  if (!(t > 0.0)) throw DomainError("temperature must be positive");

  const double step = spectrum.level_spacing() / t;
  const double offset = spectrum.ground_offset() / t;
  log_z1_.resize(static_cast<std::size_t>(n));
  for (std::int64_t j = 1; j <= n; ++j) {
    const double jd = static_cast<double>(j);
    double value;
    if (model == SingleParticleModel::full) {
      value = -jd * offset - 3.0 * std::log(-std::expm1(-jd * step));
    } else {
      double sum = 0.0;
      for (int m = spectrum.max_level(); m >= 0; --m) {
        sum += static_cast<double>(TrapSpectrum::degeneracy(m)) *
               std::exp(-jd * m * step);
      }
      if (model == SingleParticleModel::truncated_mb_tail && j == 1) {
        sum += degeneracy_tail_sum(std::exp(-step), spectrum.max_level());
      }
      value = -jd * offset + std::log(sum);
    }
    log_z1_[static_cast<std::size_t>(j - 1)] = value;
  }

  log_z_.assign(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<double> terms;
  for (std::int64_t k = 1; k <= n; ++k) {
    terms.clear();
    for (std::int64_t j = 1; j <= k; ++j) {
      terms.push_back(log_z1_[static_cast<std::size_t>(j - 1)] +
                      log_z_[static_cast<std::size_t>(k - j)]);
    }
    log_z_[static_cast<std::size_t>(k)] =
        log_sum_exp(terms) - std::log(static_cast<double>(k));
  }
}

double RecursionTable::log_z(std::int64_t k) const {
  if (k < 0 || k > max_n()) throw std::out_of_range("recursion index out of range");
  return log_z_[static_cast<std::size_t>(k)];
}

double RecursionTable::log_z1(std::int64_t j) const {
  if (j < 1 || j > max_n()) throw std::out_of_range("recursion index out of range");
  return log_z1_[static_cast<std::size_t>(j - 1)];
}

double RecursionTable::state_occupation(double state_energy, std::int64_t n) const {
  const double log_zn = log_z(n);
  double sum = 0.0;
  for (std::int64_t k = 1; k <= n; ++k) {
    sum += std::exp(-static_cast<double>(k) * state_energy / temperature_ +
                    log_z(n - k) - log_zn);
  }
  return sum;
}

double RecursionTable::state_second_moment(double state_energy,
                                           std::int64_t n) const {
  const double log_zn = log_z(n);
  double sum = 0.0;
  for (std::int64_t k = 1; k <= n; ++k) {
    sum += static_cast<double>(2 * k - 1) *
           std::exp(-static_cast<double>(k) * state_energy / temperature_ +
                    log_z(n - k) - log_zn);
  }
  return sum;
}

double RecursionTable::tail_occupation(std::int64_t n) const {
  if (model_ != SingleParticleModel::truncated_mb_tail) return 0.0;
  const double c = std::exp(-spectrum_.ground_offset() / temperature_) *
                   degeneracy_tail_sum(std::exp(-spectrum_.level_spacing() / temperature_),
                                       spectrum_.max_level());
  return c * std::exp(log_z(n - 1) - log_z(n));
}

RecursionTable recursion_partition(const TrapSpectrum& spectrum, double t,
                                   std::int64_t n, SingleParticleModel model) {
  return RecursionTable(spectrum, t, n, model);
}

std::vector<double> state_energies(const TrapSpectrum& spectrum) {
  std::vector<double> out;
  for (const Level& level : spectrum.levels()) {
    out.insert(out.end(), static_cast<std::size_t>(level.degeneracy), level.energy);
  }
  return out;
}

EnumerationResult enumerate_exact(const std::vector<double>& energies, double t,
                                  int n) {
  if (energies.empty() || energies.size() > 8) {
    throw DomainError("enumeration supports 1 to 8 states");
  }
  if (n < 0 || n > 6) throw DomainError("enumeration supports N <= 6");
  if (!(t > 0.0)) throw DomainError("temperature must be positive");

  const std::size_t states = energies.size();
  EnumerationResult out;
  out.mean.assign(states, 0.0);
  out.second.assign(states, std::vector<double>(states, 0.0));
  std::vector<int> occ(states, 0);

  // Distribute the remaining particles over states i..end.
  std::function<void(std::size_t, int)> visit = [&](std::size_t i, int left) {
    if (i + 1 == states) {
      occ[i] = left;
      double energy = 0.0;
      for (std::size_t s = 0; s < states; ++s) energy += occ[s] * energies[s];
      const double w = std::exp(-energy / t);
      out.z += w;
      ++out.configurations;
      for (std::size_t a = 0; a < states; ++a) {
        out.mean[a] += w * occ[a];
        for (std::size_t b = 0; b < states; ++b) out.second[a][b] += w * occ[a] * occ[b];
      }
      return;
    }
    for (int k = 0; k <= left; ++k) {
      occ[i] = k;
      visit(i + 1, left - k);
    }
  };
  visit(0, n);

  for (std::size_t a = 0; a < states; ++a) {
    out.mean[a] /= out.z;
    for (std::size_t b = 0; b < states; ++b) out.second[a][b] /= out.z;
  }
  return out;
}

OccupationCheckReport occupation_recursion_check(const TrapSpectrum& spectrum,
                                                 double t, std::int64_t n,
                                                 const QuadratureConfig& config) {
  if (n > 200) throw DomainError("recursion oracle is validated for N <= 200 only");
  const TrapSpectrum spec = effective_spectrum(spectrum, config);
  const RecursionTable table(spec, t, n, model_for(config.tail_mode));
  const CanonicalResult engine = canonical_observables(spec, t, n, config);

  OccupationCheckReport report;
  report.n0_recursion = table.state_occupation(spec.energy(0), n);
  report.n1_recursion = table.state_occupation(spec.energy(1), n);
  report.n0_integral = engine.n0_mean;
  report.n1_integral = engine.n1_mean;
  report.max_relative_deviation =
      std::max(std::abs(report.n0_integral / report.n0_recursion - 1.0),
               std::abs(report.n1_integral / report.n1_recursion - 1.0));

  double total = table.tail_occupation(n);
  for (const Level& level : spec.levels()) {
    total += static_cast<double>(level.degeneracy) * table.state_occupation(level.energy, n);
  }
  report.sum_rule_residual = std::abs(total - static_cast<double>(n)) / static_cast<double>(n);
  return report;
}

}  // namespace bosecanon
