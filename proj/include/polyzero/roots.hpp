#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "polyzero/polynomial.hpp"

namespace polyzero {

enum class Precision {
  automatic,  // double when the coefficient range allows it, else extended
  extended,   // force the long double kernel
};

struct SolveOptions {
  double tol = 1e-12;
  int max_iter = 500;
  Precision precision = Precision::automatic;
};

// All zeros of a polynomial, sorted by modulus and then by argument.
//
// Zeros of extreme modulus (heavy-tailed coefficients) are not always
// representable as doubles: log_moduli holds the exact log|z| while roots
// holds the same zero with its modulus clamped to [e^-700, e^700].
struct RootSet {
  std::vector<std::complex<double>> roots;
  std::vector<double> log_moduli;
  // |P(z)| / sum_j |c_j| |z|^j per root (0 for the trimmed zeros at origin).
  std::vector<double> residuals;
  int iterations = 0;
  bool converged = false;
  bool extended_precision = false;

  std::size_t size() const { return roots.size(); }
  double max_residual() const;
};

// Argument of z in [0, 2 pi); 0 for z = 0.
double principal_arg(std::complex<double> z);

// Aberth-Ehrlich simultaneous iteration. Zeros at the origin are split off
// first and the remainder is solved per Newton-polygon cluster.
//
// Throws std::invalid_argument for the zero polynomial or a constant.
// Non-convergence is reported through RootSet::converged, never thrown.
RootSet solve_roots(const Polynomial& p, const SolveOptions& opts = {});
RootSet solve_roots(const Polynomial& p, double tol, int max_iter);

// Newton power sums p_l = sum_j z_j^{-l}, l = 1..L, computed from the
// coefficient ratios c_k / c_0 alone.
std::vector<std::complex<double>> newton_power_sums(const Polynomial& p, std::size_t max_power);

// |c_0 / c_n|, the product of the root moduli.
double vieta_modulus_product(const Polynomial& p);
// log |c_0 / c_n|; finite for every coefficient range.
double log_vieta_modulus_product(const Polynomial& p);

// min(1, |c_0| / (n max_{k>=1} |c_k|)); no zero has smaller modulus.
double smallest_root_lower_bound(const Polynomial& p);

}  // namespace polyzero
