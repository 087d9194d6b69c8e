#pragma once

// Exact integer polynomial arithmetic over GMP. Double inputs are dyadic
// rationals, so every conversion below is exact.

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <vector>

namespace polyzero::detail {

using IntPoly = std::vector<mpz_class>;

// A common power-of-two multiple of the coefficients: c_k = out_k * 2^shift.
IntPoly to_integer_poly(std::span<const double> p);

// x = num / 2^s with s >= 0.
struct Dyadic {
  mpz_class num;
  unsigned long s = 0;
};
Dyadic to_dyadic(double x);

// Sign of p(x), evaluated without rounding.
int sign_at(const IntPoly& p, const Dyadic& x);

// Signs of p(x), p'(x), ..., p^(n)(x).
std::vector<int> derivative_signs(const IntPoly& p, const Dyadic& x);

// Sturm chain with each remainder reduced to its primitive part; signs agree
// with the rational chain p, p', -rem(p_{k-1}, p_k), ...
std::vector<IntPoly> sturm_chain(const IntPoly& p);

std::size_t variations_at(const std::vector<IntPoly>& chain, const Dyadic& x);

}  // namespace polyzero::detail
