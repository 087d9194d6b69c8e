#include "polyzero/polynomial.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace polyzero {

Coefficient Coefficient::from_log_polar(double log_abs, double phase) {
  if (log_abs == -std::numeric_limits<double>::infinity()) return {};
  if (!std::isfinite(log_abs)) throw std::domain_error("coefficient magnitude is not finite");
  // Split log2|c| into an integer exponent and a fractional mantissa.
  const double log2_abs = log_abs / std::numbers::ln2;
  const double e = std::floor(log2_abs);
  if (e > std::numeric_limits<int>::max() / 2 || e < std::numeric_limits<int>::min() / 2) {
    throw std::domain_error("coefficient magnitude exceeds the extended exponent range");
  }
  const double frac = std::exp2(log2_abs - e);
  return {std::polar(frac, phase), static_cast<int>(e)};
}

double Coefficient::log_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  return std::log(std::abs(mantissa)) + exponent * std::numbers::ln2;
}

bool Coefficient::fits_double() const {
  if (exponent == 0 || is_zero()) return true;
  const double la = log_abs();
  return la < 700.0 && la > -700.0;
}

std::complex<double> Coefficient::value() const {
  if (exponent == 0) return mantissa;
  return {std::ldexp(mantissa.real(), exponent), std::ldexp(mantissa.imag(), exponent)};
}

Polynomial::Polynomial(std::vector<Coefficient> coeffs) : coeffs_(std::move(coeffs)) {
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const auto& c = coeffs_[k];
    if (!std::isfinite(c.mantissa.real()) || !std::isfinite(c.mantissa.imag())) {
      throw std::invalid_argument("polynomial coefficient is not finite");
    }
    if (c.is_zero()) continue;
    if (all_zero_) bottom_ = k;
    all_zero_ = false;
    top_ = k;
  }
}

Polynomial::Polynomial(std::initializer_list<std::complex<double>> coeffs)
    : Polynomial(std::vector<Coefficient>(coeffs.begin(), coeffs.end())) {}

Polynomial Polynomial::from_values(std::span<const std::complex<double>> values) {
  return Polynomial(std::vector<Coefficient>(values.begin(), values.end()));
}

Polynomial Polynomial::from_real(std::span<const double> values) {
  return Polynomial(std::vector<Coefficient>(values.begin(), values.end()));
}

bool Polynomial::fits_double() const {
  for (const auto& c : coeffs_) {
    if (!c.fits_double()) return false;
  }
  return true;
}

std::vector<std::complex<double>> Polynomial::values() const {
  if (!fits_double()) throw std::range_error("polynomial coefficients exceed double range");
  std::vector<std::complex<double>> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.value());
  return out;
}

}  // namespace polyzero
