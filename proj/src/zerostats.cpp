#include "polyzero/zerostats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace polyzero {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_sector(double alpha, double beta) {
  if (!(alpha >= 0 && beta <= kTwoPi && alpha < beta)) {
    throw std::invalid_argument("sector must satisfy 0 <= alpha < beta <= 2 pi");
  }
}

void check_radial(double a, double b) {
  if (!(a >= 0 && a < b)) throw std::invalid_argument("radial interval must satisfy 0 <= a < b");
}

}  // namespace

ZeroMeasure::ZeroMeasure(const RootSet& roots) {
  moduli_.reserve(roots.size());
  args_.reserve(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    moduli_.push_back(std::exp(roots.log_moduli[i]));
    args_.push_back(principal_arg(roots.roots[i]));
  }
  finish();
}

ZeroMeasure ZeroMeasure::from_roots(std::span<const std::complex<double>> roots) {
  ZeroMeasure m;
  for (const auto& z : roots) {
    m.moduli_.push_back(std::abs(z));
    m.args_.push_back(principal_arg(z));
  }
  m.finish();
  return m;
}

void ZeroMeasure::finish() {
  std::vector<std::size_t> order(moduli_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (moduli_[a] != moduli_[b]) return moduli_[a] < moduli_[b];
    return args_[a] < args_[b];
  });
  std::vector<double> mod, arg;
  mod.reserve(order.size());
  arg.reserve(order.size());
  for (std::size_t i : order) {
    mod.push_back(moduli_[i]);
    arg.push_back(args_[i]);
  }
  moduli_ = std::move(mod);
  args_ = std::move(arg);
  sorted_args_ = args_;
  std::sort(sorted_args_.begin(), sorted_args_.end());
}

std::size_t radial_count(const ZeroMeasure& m, double a, double b) {
  check_radial(a, b);
  const auto mod = m.moduli();
  const auto lo = std::lower_bound(mod.begin(), mod.end(), a);
  const auto hi = std::upper_bound(mod.begin(), mod.end(), b);
  return hi > lo ? static_cast<std::size_t>(hi - lo) : 0;
}

std::size_t sector_count(const ZeroMeasure& m, double alpha, double beta) {
  check_sector(alpha, beta);
  const auto& s = m.sorted_args_;
  return static_cast<std::size_t>(std::lower_bound(s.begin(), s.end(), beta) -
                                  std::lower_bound(s.begin(), s.end(), alpha));
}

std::size_t box_count(const ZeroMeasure& m, double r_lo, double r_hi, double alpha, double beta) {
  check_radial(r_lo, r_hi);
  check_sector(alpha, beta);
  const auto mod = m.moduli();
  const auto arg = m.args();
  const auto lo = static_cast<std::size_t>(std::lower_bound(mod.begin(), mod.end(), r_lo) - mod.begin());
  const auto hi = static_cast<std::size_t>(std::upper_bound(mod.begin(), mod.end(), r_hi) - mod.begin());
  std::size_t count = 0;
  for (std::size_t i = lo; i < hi; ++i) count += arg[i] >= alpha && arg[i] < beta;
  return count;
}

double arc_measure(double alpha, double beta, double r_lo, double r_hi) {
  check_radial(r_lo, r_hi);
  check_sector(alpha, beta);
  return r_lo <= 1.0 && 1.0 <= r_hi ? (beta - alpha) / kTwoPi : 0.0;
}

std::complex<double> weyl_sum(const ZeroMeasure& m, int l) {
  if (l < 1) throw std::invalid_argument("weyl_sum: l must be at least 1");
  if (m.size() == 0) throw std::invalid_argument("weyl_sum: empty measure");
  std::complex<double> acc = 0;
  for (double theta : m.args()) acc += std::polar(1.0, static_cast<double>(l) * theta);
  return acc / static_cast<double>(m.size());
}

double ks_uniform_args(const ZeroMeasure& m) {
  const std::size_t n = m.size();
  if (n == 0) throw std::invalid_argument("ks_uniform_args: empty measure");
  std::vector<double> u(m.args().begin(), m.args().end());
  std::sort(u.begin(), u.end());
  double d = 0;
  const double nn = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ui = u[i] / kTwoPi;
    d = std::max({d, static_cast<double>(i + 1) / nn - ui, ui - static_cast<double>(i) / nn});
  }
  return d;
}

}  // namespace polyzero
