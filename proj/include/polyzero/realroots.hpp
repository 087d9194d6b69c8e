#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "polyzero/polynomial.hpp"

namespace polyzero {

// Real polynomials are plain coefficient vectors in ascending powers.
using RealPoly = std::vector<double>;

enum class Arithmetic {
  automatic,  // exact up to kExactMaxDegree, floating point above
  floating,
  exact,      // GMP rationals; doubles convert without rounding
};

inline constexpr std::size_t kExactMaxDegree = 64;

// Number of sign changes after deleting the zero entries.
std::size_t sign_changes(std::span<const double> values);

// Coefficients of p(x + a).
RealPoly taylor_shift(std::span<const double> p, double a);

// p(x), p'(x), ..., p^(n)(x) from one Taylor shift. Entries past 170
// derivatives may overflow to +-inf; their signs stay correct.
std::vector<double> derivative_sign_sequence(std::span<const double> p, double x);

// Z_p(x): sign changes of the derivative sequence at x.
std::size_t derivative_sign_changes(std::span<const double> p, double x, Arithmetic mode = Arithmetic::automatic);

// Z_p(a) - Z_p(b). At least the number of roots in (a, b) counted with
// multiplicity, and exceeds it by an even number. Throws if p(a) or p(b) is 0.
std::size_t budan_fourier_bound(std::span<const double> p, double a, double b,
                                Arithmetic mode = Arithmetic::automatic);

// Floating-point Sturm chain p, p', -rem(p0, p1), ... with every member
// rescaled to unit max coefficient.
class SturmChain {
 public:
  explicit SturmChain(std::span<const double> p);

  const std::vector<RealPoly>& chain() const { return chain_; }

  // Sign variations at x. A member whose value is inside its rounding bound
  // is re-read at x + h and then x - h, h = 1e-9 (1 + |x|); each such retry
  // increments guard_events.
  std::size_t variations(double x, std::size_t& guard_events) const;

 private:
  std::vector<RealPoly> chain_;
};

struct SturmResult {
  std::size_t count = 0;
  std::size_t guard_events = 0;
  bool exact = false;
};

// Distinct real roots in (a, b]. Throws when p(a) or p(b) is 0 or p is constant.
SturmResult sturm_count(std::span<const double> p, double a, double b, Arithmetic mode = Arithmetic::automatic);

enum class RealCountMethod {
  exact_sturm,       // exact Sturm chain on (-B, B]
  inclusion_disks,   // certified from computed roots
  uncertified,       // fallback estimate; logged as an escalation
};

struct RealRootReport {
  std::size_t count = 0;
  RealCountMethod method = RealCountMethod::exact_sturm;
  bool extended_precision = false;
};

// M_n: number of distinct real roots, a root at 0 of any multiplicity counted
// once. Up to kExactMaxDegree the exact Sturm chain is used on +-B with B a
// power of two above the Cauchy bound. Higher degrees count roots from the
// simultaneous solver and certify them with Weierstrass inclusion disks:
// every disk must be isolated and each disk meeting the real axis must have a
// mirror image that meets no other disk. When that fails in double and again
// with the extended kernel, the count of roots with |Im z| below their disk
// radius is returned with method = uncertified.
RealRootReport count_real_roots_report(std::span<const double> p);
std::size_t count_real_roots(std::span<const double> p);

// Cauchy bound 1 + max |c_k / c_n| rounded up to a power of two.
double cauchy_bound(std::span<const double> p);

// p(-x) and x^n p(1/x).
RealPoly reflect(std::span<const double> p);
RealPoly reverse(std::span<const double> p);

// Real coefficients of p; throws unless every coefficient is real and fits a double.
RealPoly real_coefficients(const Polynomial& p);

// eta_k = Re(c_k exp(2 pi i k q / den)), 0 <= q < den. Angles that are
// multiples of pi/2 use exact cos and sin values.
RealPoly ray_real_projection(const Polynomial& p, std::int64_t q, std::int64_t den);

}  // namespace polyzero
