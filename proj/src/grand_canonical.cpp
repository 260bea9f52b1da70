#include "bosecanon/grand_canonical.hpp"

#include <cmath>
#include <sstream>

#include "bosecanon/errors.hpp"

namespace bosecanon {
namespace {

struct Totals {
  double particles;
  double variance;  // -d particles / ds
};

Totals totals_at_gap(const TrapSpectrum& spectrum, double t, double gap,
                     bool include_tail) {
  const double step = spectrum.level_spacing() / t;
  double particles = 0.0;
  double variance = 0.0;
  for (int m = spectrum.max_level(); m >= 0; --m) {
    const double occ = 1.0 / std::expm1(gap + m * step);
    const double g = static_cast<double>(TrapSpectrum::degeneracy(m));
    particles += g * occ;
    variance += g * occ * (occ + 1.0);
  }
  if (include_tail) {
    const double tail =
        std::exp(-gap) * degeneracy_tail_sum(std::exp(-step), spectrum.max_level());
    particles += tail;
    variance += tail;
  }
  return {particles, variance};
}

}  // namespace

GrandCanonicalState::GrandCanonicalState(TrapSpectrum spectrum,
                                         double temperature, double ground_gap,
                                         bool include_tail,
                                         std::optional<std::int64_t> target_n)
    : spectrum_(spectrum),
      temperature_(temperature),
      ground_gap_(ground_gap),
      include_tail_(include_tail),
      target_n_(target_n) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw DomainError("temperature must be positive");
  }
  if (!(ground_gap > 0.0)) {
    throw DomainError("chemical potential must lie strictly below the lowest level");
  }
}

GrandCanonicalState GrandCanonicalState::from_fugacity(TrapSpectrum spectrum,
                                                       double temperature,
                                                       double fugacity,
                                                       bool include_tail) {
  if (!(fugacity > 0.0)) throw DomainError("fugacity must be positive");
  const double gap = spectrum.ground_offset() / temperature - std::log(fugacity);
  return GrandCanonicalState(spectrum, temperature, gap, include_tail);
}

double GrandCanonicalState::log_fugacity() const {
  return spectrum_.ground_offset() / temperature_ - ground_gap_;
}

double GrandCanonicalState::fugacity() const { return std::exp(log_fugacity()); }

double GrandCanonicalState::chemical_potential() const {
  return spectrum_.ground_offset() - ground_gap_ * temperature_;
}

double GrandCanonicalState::state_occupation(int m) const {
  // Validates m against the spectrum.
  (void)spectrum_.energy(m);
  return 1.0 / std::expm1(ground_gap_ + m * spectrum_.level_spacing() / temperature_);
}

double GrandCanonicalState::ground_fluctuation() const {
  return occupation_fluctuation(ground_occupation());
}

double GrandCanonicalState::tail_particles() const {
  if (!include_tail_) return 0.0;
  const double q = std::exp(-spectrum_.level_spacing() / temperature_);
  return std::exp(-ground_gap_) * degeneracy_tail_sum(q, spectrum_.max_level());
}

double GrandCanonicalState::total_particles() const {
  return totals_at_gap(spectrum_, temperature_, ground_gap_, include_tail_).particles;
}

double GrandCanonicalState::excited_particles() const {
  return total_particles() - ground_occupation();
}

double GrandCanonicalState::total_variance() const {
  return totals_at_gap(spectrum_, temperature_, ground_gap_, include_tail_).variance;
}

double mean_occupation(const GrandCanonicalState& state, double level_energy) {
  const double x = (level_energy - state.chemical_potential()) / state.temperature();
  if (!(x > 0.0)) {
    std::ostringstream msg;
    msg << "level energy " << level_energy << " not above chemical potential "
        << state.chemical_potential() << " (unphysical fugacity)";
    throw DomainError(msg.str());
  }
  return 1.0 / std::expm1(x);
}

double occupation_fluctuation(double mean_occupation) {
  if (!(mean_occupation >= 0.0)) throw DomainError("occupation must be nonnegative");
  return std::sqrt(mean_occupation * (mean_occupation + 1.0));
}

GrandCanonicalState solve_fugacity(const TrapSpectrum& spectrum, double t,
                                   std::int64_t n_target, bool include_tail) {
  if (n_target < 1) throw DomainError("target particle number must be >= 1");
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("temperature must be positive");
  const double n = static_cast<double>(n_target);
  auto excess = [&](double gap) {
    return totals_at_gap(spectrum, t, gap, include_tail).particles - n;
  };

  // The ground state alone holds n particles at gap log(1 + 1/n), so the
  // root lies at or above it. Expand geometrically for the upper end.
  double lo = std::log1p(1.0 / n);
  double hi = 2.0 * lo;
  int expansions = 0;
  while (excess(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (++expansions > 2000 || !std::isfinite(hi)) {
      std::ostringstream msg;
      msg << "fugacity bracketing failed: T=" << t << " N=" << n_target
          << " max_level=" << spectrum.max_level();
      throw ConvergenceError(msg.str());
    }
  }

  double gap = std::sqrt(lo * hi);
  for (int iter = 0; iter < 400; ++iter) {
    const Totals tot = totals_at_gap(spectrum, t, gap, include_tail);
    const double f = tot.particles - n;
    if (std::abs(f) <= 1e-13 * n) break;
    if (f > 0.0) lo = gap; else hi = gap;
    double next = gap + f / tot.variance;  // Newton: d particles/d gap = -variance
    if (!(next > lo && next < hi)) next = std::sqrt(lo * hi);
    if (std::abs(next - gap) <= 1e-16 * gap) {
      gap = next;
      break;
    }
    gap = next;
  }
  const double residual = std::abs(excess(gap)) / n;
  if (!(residual <= 1e-10)) {
    std::ostringstream msg;
    msg << "fugacity solve residual " << residual << " at T=" << t
        << " N=" << n_target;
    throw ConvergenceError(msg.str());
  }
  return GrandCanonicalState(spectrum, t, gap, include_tail, n_target);
}

double excited_count_limit(const TrapSpectrum& spectrum, double t) {
  const double r = t / spectrum.level_spacing();
  return kZeta3 * r * r * r;
}

double excited_fluctuation_limit(const TrapSpectrum& spectrum, double t) {
  const double r = t / spectrum.level_spacing();
  return std::sqrt(kPi * kPi / 6.0 * r * r * r);
}

double total_energy(const TrapSpectrum& spectrum, double t) {
  const double r = t / spectrum.level_spacing();
  return std::pow(kPi, 4) / 30.0 * t * r * r * r;
}

double total_energy_from_excited(double t, double excited_count) {
  return std::pow(kPi, 4) / (30.0 * kZeta3) * t * excited_count;
}

double energy_fluctuation(const TrapSpectrum& spectrum, double t) {
  // d<E>/dT = 4 <E>/T for the T^4 law.
  return std::sqrt(t * t * 4.0 * total_energy(spectrum, t) / t);
}

}  // namespace bosecanon
