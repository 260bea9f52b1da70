#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace bosecanon {

/// Complex number held as log-modulus and phase, so long products of
/// factors can be formed by addition without overflow. The value is
/// exp(log_modulus) * (cos(phase) + i sin(phase)).
///
/// `Real` is the seam for extended precision; the engine uses double.
template <typename Real>
class BasicLogComplex {
 public:
  constexpr BasicLogComplex() = default;
  constexpr BasicLogComplex(Real log_modulus, Real phase)
      : log_modulus_(log_modulus), phase_(phase) {}

  static BasicLogComplex from_complex(std::complex<Real> v) {
    return {std::log(std::abs(v)), std::arg(v)};
  }

  constexpr Real log_modulus() const noexcept { return log_modulus_; }
  constexpr Real phase() const noexcept { return phase_; }

  /// Phase reduced to (-pi, pi].
  Real wrapped_phase() const {
    constexpr Real two_pi = 2 * std::numbers::pi_v<Real>;
    Real p = std::remainder(phase_, two_pi);
    if (p <= -std::numbers::pi_v<Real>) p += two_pi;
    return p;
  }

  /// Multiplies by exp(log_value) for a complex logarithm log_value.
  BasicLogComplex& add_log(std::complex<Real> log_value) {
    log_modulus_ += log_value.real();
    phase_ += log_value.imag();
    return *this;
  }

  BasicLogComplex& operator*=(const BasicLogComplex& o) {
    log_modulus_ += o.log_modulus_;
    phase_ += o.phase_;
    return *this;
  }
  friend BasicLogComplex operator*(BasicLogComplex a, const BasicLogComplex& b) {
    return a *= b;
  }

  /// Raises to a real power.
  BasicLogComplex pow(Real exponent) const {
    return {log_modulus_ * exponent, phase_ * exponent};
  }

  BasicLogComplex conj() const { return {log_modulus_, -phase_}; }

  /// Ordinary complex value after dividing by exp(log_offset).
  std::complex<Real> to_complex(Real log_offset = 0) const {
    return std::polar(std::exp(log_modulus_ - log_offset), wrapped_phase());
  }

  bool finite() const {
    return std::isfinite(log_modulus_) && std::isfinite(phase_);
  }

 private:
  Real log_modulus_ = 0;
  Real phase_ = 0;
};

using LogComplex = BasicLogComplex<double>;

/// log(1 - u) accurate for small |u|, with the branch cut of std::log.
template <typename Real>
std::complex<Real> log_one_minus(std::complex<Real> u) {
  const Real re = u.real();
  const Real im = u.imag();
  if (re > Real(0.5)) {
    // 1 - re is exact here; direct modulus keeps relative accuracy near u = 1.
    return {std::log(std::hypot(1 - re, im)), std::atan2(-im, 1 - re)};
  }
  // |1 - u|^2 - 1 = -2 re + |u|^2
  const Real shifted = -2 * re + (re * re + im * im);
  return {std::log1p(shifted) / 2, std::atan2(-im, 1 - re)};
}

/// Neumaier-compensated running sum of complex values.
template <typename Real>
class CompensatedSum {
 public:
  void add(std::complex<Real> v) {
    add_part(sum_re_, comp_re_, v.real());
    add_part(sum_im_, comp_im_, v.imag());
  }
  std::complex<Real> value() const {
    return {sum_re_ + comp_re_, sum_im_ + comp_im_};
  }

 private:
  static void add_part(Real& sum, Real& comp, Real v) {
    const Real t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  Real sum_re_ = 0, comp_re_ = 0, sum_im_ = 0, comp_im_ = 0;
};

}  // namespace bosecanon
