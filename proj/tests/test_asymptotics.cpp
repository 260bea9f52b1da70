#include <doctest.h>

#include <cmath>
#include <limits>

#include "bosecanon/asymptotics.hpp"
#include "bosecanon/errors.hpp"

using namespace bosecanon;

TEST_CASE("limiting condensate fraction") {
  CHECK(condensate_fraction_limit(0.0) == 1.0);
  CHECK(condensate_fraction_limit(1.0) == 0.0);
  CHECK(condensate_fraction_limit(1.3) == 0.0);
  CHECK(condensate_fraction_limit(0.6) == doctest::Approx(0.784));
  CHECK_THROWS_AS(condensate_fraction_limit(-0.1), DomainError);
}

TEST_CASE("condensate fluctuation estimate") {
  CHECK(std::abs(fluctuation_prefactor() - 1.1698) < 1e-4);
  CHECK(fluctuation_prefactor() == doctest::Approx(std::sqrt(kPi * kPi / (6.0 * kZeta3))));
  CHECK(delta_n0_fraction_limit(4000, 0.5) / delta_n0_fraction_limit(1000, 0.5) ==
        doctest::Approx(0.5).epsilon(1e-14));
  const double x = 0.5;
  CHECK(delta_n0_fraction_limit(10000, x) ==
        doctest::Approx(std::pow(x, 1.5) / (1 - x * x * x) * 1.1698 / 100.0).epsilon(1e-4));
  CHECK_THROWS_AS(delta_n0_fraction_limit(100, 1.0), DomainError);
  CHECK_THROWS_AS(delta_n0_fraction_limit(100, 0.0), DomainError);
  CHECK_THROWS_AS(delta_n0_fraction_limit(0, 0.5), DomainError);
}

TEST_CASE("correlation estimate") {
  for (double x : {0.05, 0.5, 0.95}) {
    CHECK(correlation_limit(1000, x) < 0.0);
    CHECK(correlation_limit(1000, x) * std::pow(1000.0, 2.0 / 3.0) ==
          doctest::Approx(correlation_limit(64000, x) * std::pow(64000.0, 2.0 / 3.0)));
  }
  CHECK_THROWS_AS(correlation_limit(100, 1.2), DomainError);
}

TEST_CASE("estimates vanish at low T and diverge at Tc") {
  // Log-log slopes near zero: 3/2 for the fluctuation, 1 for the correlation.
  const double x1 = 1e-4, x2 = 2e-4;
  CHECK(std::log(delta_n0_fraction_limit(100, x2) / delta_n0_fraction_limit(100, x1)) /
            std::log(2.0) ==
        doctest::Approx(1.5).epsilon(1e-3));
  CHECK(std::log(correlation_limit(100, x2) / correlation_limit(100, x1)) / std::log(2.0) ==
        doctest::Approx(1.0).epsilon(1e-3));
  CHECK(delta_n0_fraction_limit(100, 1.0 - 1e-9) > 1e6);
  CHECK(-correlation_limit(100, 1.0 - 1e-9) > 1e6);
}

TEST_CASE("correlation transfer ratio") {
  // The approach is slow (relative error of order log T / T), so only check
  // that it is monotone and eventually small.
  const TrapSpectrum s(1);
  double previous = HUGE_VAL;
  for (double t : {5.0, 20.0, 80.0, 320.0}) {
    const double finite = correlation_transfer_ratio(s, t);
    const double limit = correlation_transfer_ratio_limit(s, t);
    CHECK(finite < 0.0);
    const double error = std::abs(finite / limit - 1.0);
    CHECK(error < previous);
    CHECK(error < 2.0 * std::log(t) / t);
    previous = error;
  }
  CHECK(previous < 0.03);
  CHECK(correlation_transfer_ratio_limit(s, 20.0) == doctest::Approx(-6.0 / (kPi * kPi * 20.0)));
}

TEST_CASE("transfer ratio times the fluctuation estimate gives the correlation estimate") {
  // Delta n0^2 = (pi^2/6) T^3, N0 = N (1 - x^3), N1 -> T in the limit.
  const TrapSpectrum s(1);
  for (double x : {0.3, 0.6, 0.9}) {
    const std::int64_t n = 1000000000;
    const double t = x * critical_temperature(s, n);
    const double variance = kPi * kPi / 6.0 * t * t * t;
    const double n0 = n * (1.0 - x * x * x);
    const double built = correlation_transfer_ratio_limit(s, t) * variance / (n0 * t);
    CHECK(built == doctest::Approx(correlation_limit(n, x)).epsilon(1e-13));
    // And the finite-T ratio with the exact N1 approaches it.
    const double n1 = 1.0 / std::expm1(1.0 / t);
    const double finite = correlation_transfer_ratio(s, t) * variance / (n0 * n1);
    CHECK(finite == doctest::Approx(correlation_limit(n, x)).epsilon(3.0 / t));
  }
}

TEST_CASE("interacting condensate") {
  const InteractionParams p{0.25};
  CHECK(interacting_condensate_fluctuation(0.25, p) == doctest::Approx(1.0));
  const double mu = 40.0, t = 3.0;
  const double n0 = interacting_condensate_mean(mu, p);
  CHECK(n0 == doctest::Approx(80.0));
  CHECK(interacting_condensate_fluctuation(t, p) / n0 ==
        doctest::Approx(std::sqrt(t / (p.pair_energy * n0 * n0))));
  CHECK(interacting_condensate_fluctuation(t, InteractionParams{1e12}) < 1e-5);
  const InteractionParams from_a = InteractionParams::from_scattering_length(0.01);
  CHECK(from_a.pair_energy == doctest::Approx(0.01 / std::sqrt(2.0 * kPi)));
  CHECK(from_a.scattering_length() == doctest::Approx(0.01));
  CHECK_THROWS_AS(interacting_condensate_fluctuation(1.0, InteractionParams{0.0}), DomainError);
  CHECK_THROWS_AS(interacting_condensate_mean(-1.0, p), DomainError);
}

TEST_CASE("damping crossover") {
  const TrapSpectrum s(1);
  for (double t : {2.0, 10.0, 37.5}) {
    const InteractionParams at{1.0 / (t * t)};
    const DampingCrossover c = damping_crossover(s, t, at);
    CHECK(t / at.pair_energy == doctest::Approx(t * t * t).epsilon(1e-15));
    CHECK(c.scale_ratio == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c.regime == DampingRegime::interaction_dominates);
    CHECK(damping_crossover(s, t, InteractionParams{0.5 / (t * t)}).regime ==
          DampingRegime::fixed_n_dominates);
    CHECK(damping_crossover(s, t, InteractionParams{2.0 / (t * t)}).scale_ratio < 1.0);
  }
  const DampingCrossover free = damping_crossover(s, 5.0, InteractionParams{0.0});
  CHECK(free.regime == DampingRegime::fixed_n_dominates);
  CHECK(free.scale_ratio == std::numeric_limits<double>::infinity());
  // At T = Tc the crossover pair energy is zeta(3)^{2/3} N^{-2/3}.
  for (std::int64_t n : {1000, 1000000}) {
    const double tc = critical_temperature(s, n);
    CHECK(1.0 / (tc * tc) ==
          doctest::Approx(std::pow(kZeta3, 2.0 / 3.0) * std::pow(double(n), -2.0 / 3.0)));
  }
  CHECK(to_string(DampingRegime::interaction_dominates) == "interaction_dominates");
}
