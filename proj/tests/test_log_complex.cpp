#include <doctest.h>

#include <cmath>
#include <complex>

#include "bosecanon/log_complex.hpp"
#include "bosecanon/spectrum.hpp"

using namespace bosecanon;
using cplx = std::complex<double>;

TEST_CASE("log-complex round trip and products") {
  const cplx a(0.3, -1.7), b(-2.0, 0.25);
  const LogComplex la = LogComplex::from_complex(a);
  const LogComplex lb = LogComplex::from_complex(b);
  CHECK(std::abs(la.to_complex() - a) < 1e-15);
  CHECK(std::abs((la * lb).to_complex() - a * b) < 1e-14);
  CHECK(std::abs(la.conj().to_complex() - std::conj(a)) < 1e-15);
  CHECK(std::abs(la.pow(3.0).to_complex() - a * a * a) < 1e-13);
  CHECK(std::abs(la.wrapped_phase()) <= kPi);
}

TEST_CASE("long products stay finite in log form") {
  LogComplex acc;
  const LogComplex big(700.0, 1.0);
  for (int k = 0; k < 1000; ++k) acc *= big;
  CHECK(acc.finite());
  CHECK(acc.log_modulus() == doctest::Approx(700000.0));
  // A matching offset brings the value back into range.
  CHECK(std::abs(acc.to_complex(700000.0)) == doctest::Approx(1.0));
}

TEST_CASE("log(1 - u) keeps relative accuracy at both ends") {
  for (double x : {1e-18, 1e-9, 0.3}) {
    const cplx v = log_one_minus(cplx(x, 0.0));
    CHECK(v.real() == doctest::Approx(std::log1p(-x)).epsilon(1e-15));
    CHECK(v.imag() == 0.0);
  }
  const double eps = 1e-12;
  const cplx v = log_one_minus(cplx(1.0 - eps, 0.0));
  CHECK(v.real() == doctest::Approx(std::log(eps)).epsilon(1e-4));
  for (double z : {0.1, 1.0, 3.0}) {
    const cplx u = 0.9 * std::exp(cplx(0.0, -z));
    const cplx ref = std::log(1.0 - u);
    CHECK(std::abs(log_one_minus(u) - ref) < 1e-14);
  }
}

TEST_CASE("compensated summation recovers small terms") {
  CompensatedSum<double> sum;
  sum.add(cplx(1e16, -1e16));
  for (int k = 0; k < 1000; ++k) sum.add(cplx(1.0, 1.0));
  sum.add(cplx(-1e16, 1e16));
  CHECK(sum.value() == cplx(1000.0, 1000.0));
}
