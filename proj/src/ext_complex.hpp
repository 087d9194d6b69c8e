#pragma once

// Complex numbers with a long double mantissa and a 64-bit binary exponent,
// used to evaluate polynomials whose terms span more than the long double
// range. Value = m * 2^e, with max(|re m|, |im m|) in [0.5, 1) unless zero.

#include <cmath>
#include <complex>
#include <algorithm>
#include <cstdint>
#include <limits>

#include "polyzero/polynomial.hpp"

namespace polyzero::detail {

struct ExtComplex {
  std::complex<long double> m{};
  std::int64_t e = 0;

  static ExtComplex normalized(std::complex<long double> m, std::int64_t e) {
    const long double s = std::max(std::fabs(m.real()), std::fabs(m.imag()));
    if (s == 0) return {};
    int k = 0;
    std::frexp(s, &k);
    return {{std::ldexp(m.real(), -k), std::ldexp(m.imag(), -k)}, e + k};
  }

  static ExtComplex from(const Coefficient& c) {
    return normalized({c.mantissa.real(), c.mantissa.imag()}, c.exponent);
  }

  bool is_zero() const { return m.real() == 0 && m.imag() == 0; }

  // log|value|, natural base.
  long double log_abs() const {
    return std::log(std::abs(m)) + static_cast<long double>(e) * 0.693147180559945309417232121458176568L;
  }
};

inline ExtComplex operator*(const ExtComplex& a, const ExtComplex& b) {
  const long double ar = a.m.real(), ai = a.m.imag(), br = b.m.real(), bi = b.m.imag();
  return ExtComplex::normalized({ar * br - ai * bi, ar * bi + ai * br}, a.e + b.e);
}

inline ExtComplex operator+(const ExtComplex& a, const ExtComplex& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const ExtComplex& big = a.e >= b.e ? a : b;
  const ExtComplex& small = a.e >= b.e ? b : a;
  const std::int64_t shift = small.e - big.e;
  if (shift < -200) return big;
  const int s = static_cast<int>(shift);
  return ExtComplex::normalized(
      {big.m.real() + std::ldexp(small.m.real(), s), big.m.imag() + std::ldexp(small.m.imag(), s)}, big.e);
}

// Extended-range real scale, used for sum |c_k| |z|^k.
struct ExtReal {
  long double m = 0;
  std::int64_t e = 0;

  static ExtReal normalized(long double m, std::int64_t e) {
    if (m == 0) return {};
    int k = 0;
    std::frexp(m, &k);
    return {std::ldexp(m, -k), e + k};
  }
};

inline ExtReal operator*(const ExtReal& a, const ExtReal& b) { return ExtReal::normalized(a.m * b.m, a.e + b.e); }

inline ExtReal operator+(const ExtReal& a, const ExtReal& b) {
  if (a.m == 0) return b;
  if (b.m == 0) return a;
  const ExtReal& big = a.e >= b.e ? a : b;
  const ExtReal& small = a.e >= b.e ? b : a;
  const std::int64_t shift = small.e - big.e;
  if (shift < -200) return big;
  return ExtReal::normalized(big.m + std::ldexp(small.m, static_cast<int>(shift)), big.e);
}

// ratio of two extended reals as a long double (saturating).
inline long double ratio(const ExtComplex& num, const ExtReal& den) {
  if (num.is_zero()) return 0;
  const std::int64_t de = num.e - den.e;
  if (de < -16000) return 0;
  if (de > 16000) return std::numeric_limits<long double>::infinity();
  return std::ldexp(std::abs(num.m) / den.m, static_cast<int>(de));
}

}  // namespace polyzero::detail
