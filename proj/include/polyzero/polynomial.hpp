#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace polyzero {

// A complex coefficient with an extended binary exponent:
// value = mantissa * 2^exponent. Heavy-tailed laws produce magnitudes far
// outside the range of double, so coefficients carry their own scale.
struct Coefficient {
  std::complex<double> mantissa{};
  int exponent = 0;

  Coefficient() = default;
  Coefficient(double v) : mantissa(v) {}  // NOLINT(google-explicit-constructor)
  Coefficient(std::complex<double> v) : mantissa(v) {}  // NOLINT
  Coefficient(std::complex<double> m, int e) : mantissa(m), exponent(e) {}

  // Builds |c| = exp(log_abs), arg c = phase without overflowing.
  static Coefficient from_log_polar(double log_abs, double phase);

  bool is_zero() const { return mantissa == std::complex<double>{}; }
  double log_abs() const;  // -inf for zero
  double arg() const { return std::arg(mantissa); }
  bool fits_double() const;
  // Plain value; overflows to inf when !fits_double().
  std::complex<double> value() const;

  friend bool operator==(const Coefficient& a, const Coefficient& b) {
    return a.mantissa == b.mantissa && a.exponent == b.exponent;
  }
};

// Coefficients in ascending powers, c[0] + c[1] z + ... + c[n] z^n.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Coefficient> coeffs);
  Polynomial(std::initializer_list<std::complex<double>> coeffs);
  static Polynomial from_values(std::span<const std::complex<double>> values);
  static Polynomial from_real(std::span<const double> values);

  std::span<const Coefficient> coeffs() const { return coeffs_; }
  const Coefficient& operator[](std::size_t k) const { return coeffs_[k]; }

  // Length of the coefficient vector minus one.
  std::size_t nominal_degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  // Index of the highest nonzero coefficient.
  std::size_t effective_top() const { return top_; }
  // Index of the lowest nonzero coefficient (multiplicity of the root at 0).
  std::size_t origin_order() const { return bottom_; }
  bool is_zero() const { return all_zero_; }

  bool fits_double() const;
  // Throws std::range_error when some coefficient overflows double.
  std::vector<std::complex<double>> values() const;

 private:
  std::vector<Coefficient> coeffs_;
  std::size_t top_ = 0;
  std::size_t bottom_ = 0;
  bool all_zero_ = true;
};

}  // namespace polyzero
