#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "polyzero/roots.hpp"

namespace polyzero {

// Empirical zero measure: moduli in non-decreasing order with the argument of
// each zero alongside, arguments in [0, 2 pi).
class ZeroMeasure {
 public:
  ZeroMeasure() = default;
  explicit ZeroMeasure(const RootSet& roots);
  static ZeroMeasure from_roots(std::span<const std::complex<double>> roots);

  std::span<const double> moduli() const { return moduli_; }
  std::span<const double> args() const { return args_; }
  std::size_t size() const { return moduli_.size(); }

 private:
  void finish();

  std::vector<double> moduli_;
  std::vector<double> args_;
  std::vector<double> sorted_args_;

  friend std::size_t sector_count(const ZeroMeasure&, double, double);
};

// Zeros with a <= |z| <= b (closed on both ends). b may be +infinity.
std::size_t radial_count(const ZeroMeasure& m, double a, double b);

// Zeros with alpha <= arg z < beta. Half-open so that a partition of
// [0, 2 pi) counts every zero exactly once.
std::size_t sector_count(const ZeroMeasure& m, double alpha, double beta);

// Zeros with r_lo <= |z| <= r_hi and alpha <= arg z < beta.
std::size_t box_count(const ZeroMeasure& m, double r_lo, double r_hi, double alpha, double beta);

// Mass the arc-length measure on the unit circle gives the same box:
// (beta - alpha) / (2 pi) when r_lo <= 1 <= r_hi, else 0.
double arc_measure(double alpha, double beta, double r_lo, double r_hi);

// (1/n) sum_j exp(i l theta_j), l >= 1.
std::complex<double> weyl_sum(const ZeroMeasure& m, int l);

// Kolmogorov-Smirnov distance between the arguments (scaled to [0, 1]) and
// the uniform law: max_i max(i/n - u_(i), u_(i) - (i-1)/n).
double ks_uniform_args(const ZeroMeasure& m);

}  // namespace polyzero
