#include "polyzero/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "aberth_kernel.hpp"
#include "ext_complex.hpp"

namespace polyzero {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Newton-polygon clusters separated by more than this many binary orders of
// magnitude in root modulus are solved independently; the neglected terms are
// below 2^-57 relative.
constexpr double kClusterGapLog2 = 57.7;
// Irrational rotation applied to initial guesses.
constexpr double kAngleOffset = 0.7;

// The kernel squares values of p and p', so the dominant term must stay
// above the square root of the smallest normal number.
struct Limits {
  double term_log2;    // smallest acceptable dominant Horner term, log2
  double radius_log2;  // largest |log2 |w|| the kernel may see
};

template <class T>
constexpr Limits limits_for() {
  if constexpr (std::is_same_v<T, double>) {
    return {-450.0, 400.0};
  } else {
    return {-7500.0, 7000.0};
  }
}

struct Trimmed {
  std::vector<Coefficient> c;
  std::vector<double> log2_abs;
};

// Upper convex hull of (k, log2|c_k|) over [lo, hi], skipping zero coefficients.
std::vector<std::size_t> upper_hull(const std::vector<double>& y, std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> h;
  for (std::size_t k = lo; k <= hi; ++k) {
    if (!std::isfinite(y[k])) continue;
    while (h.size() >= 2) {
      const std::size_t a = h[h.size() - 2], b = h.back();
      const double cross = static_cast<double>(b - a) * (y[k] - y[a]) - (y[b] - y[a]) * static_cast<double>(k - a);
      if (cross >= 0) {
        h.pop_back();
      } else {
        break;
      }
    }
    h.push_back(k);
  }
  return h;
}

// log2 of the modulus scale of the roots attached to hull edge e.
double edge_radius(const std::vector<double>& y, const std::vector<std::size_t>& h, std::size_t e) {
  return (y[h[e]] - y[h[e + 1]]) / static_cast<double>(h[e + 1] - h[e]);
}

struct PieceScale {
  std::int64_t r = 0;  // z = 2^r w
  std::int64_t e = 0;  // coefficients divided by 2^e
};

PieceScale piece_scale(const Trimmed& t, const std::vector<std::size_t>& h) {
  // Length-weighted median of the edge radii: most roots end up near |w| = 1.
  const std::size_t m = h.back() - h.front();
  std::size_t seen = 0;
  double median = 0;
  for (std::size_t e = 0; e + 1 < h.size(); ++e) {
    seen += h[e + 1] - h[e];
    if (2 * seen >= m) {
      median = edge_radius(t.log2_abs, h, e);
      break;
    }
  }
  PieceScale s;
  s.r = static_cast<std::int64_t>(std::llround(median));
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t v : h) {
    best = std::max(best, t.log2_abs[v] + static_cast<double>(v - h.front()) * static_cast<double>(s.r));
  }
  s.e = static_cast<std::int64_t>(std::ceil(best));
  return s;
}

// The kernel evaluates forward Horner for |w| <= 1 and the reversed
// polynomial beyond; at each edge radius the dominant term of whichever
// form is used must stay well inside the normal range of T.
template <class T>
bool piece_fits(const Trimmed& t, const std::vector<std::size_t>& h, const PieceScale& s) {
  const Limits lim = limits_for<T>();
  const double r = static_cast<double>(s.r);
  const double m = static_cast<double>(h.back() - h.front());
  for (std::size_t e = 0; e + 1 < h.size(); ++e) {
    const double tau = edge_radius(t.log2_abs, h, e) - r;
    if (std::fabs(tau) > lim.radius_log2) return false;
    const double k = static_cast<double>(h[e] - h.front());
    const double scaled = t.log2_abs[h[e]] + k * r - static_cast<double>(s.e);
    const double dominant = tau <= 0 ? scaled + k * tau : scaled + k * tau - m * tau;
    if (dominant < lim.term_log2) return false;
  }
  return true;
}

template <class T>
T scaled_part(double mantissa_part, std::int64_t shift) {
  if (mantissa_part == 0 || shift < -20000) return T(0);
  return std::ldexp(static_cast<T>(mantissa_part), static_cast<int>(std::min<std::int64_t>(shift, 20000)));
}

struct PieceRoots {
  std::vector<std::complex<long double>> w;  // roots of the scaled piece
  std::vector<double> residuals;
  std::int64_t r = 0;
  int sweeps = 0;
};

template <class T>
PieceRoots run_piece(const Trimmed& t, const std::vector<std::size_t>& h, const PieceScale& s,
                     const SolveOptions& opts) {
  const std::size_t lo = h.front(), hi = h.back(), m = hi - lo;
  std::vector<std::complex<T>> coeffs(m + 1);
  for (std::size_t k = lo; k <= hi; ++k) {
    const Coefficient& c = t.c[k];
    const std::int64_t shift = c.exponent + static_cast<std::int64_t>(k - lo) * s.r - s.e;
    coeffs[k - lo] = {scaled_part<T>(c.mantissa.real(), shift), scaled_part<T>(c.mantissa.imag(), shift)};
  }
  std::vector<std::complex<T>> init;
  init.reserve(m);
  for (std::size_t e = 0; e + 1 < h.size(); ++e) {
    const std::size_t len = h[e + 1] - h[e];
    const T radius = std::exp2(static_cast<T>(edge_radius(t.log2_abs, h, e) - static_cast<double>(s.r)));
    for (std::size_t j = 0; j < len; ++j) {
      const double angle = kTwoPi * static_cast<double>(j) / static_cast<double>(len) +
                           kTwoPi * static_cast<double>(h[e] - lo) / static_cast<double>(m) + kAngleOffset;
      init.push_back(std::polar(radius, static_cast<T>(angle)));
    }
  }
  const auto res = detail::aberth<T>(coeffs, init, static_cast<T>(opts.tol), opts.max_iter);
  PieceRoots out;
  out.r = s.r;
  out.sweeps = res.sweeps;
  for (std::size_t i = 0; i < m; ++i) {
    out.w.emplace_back(static_cast<long double>(res.re[i]), static_cast<long double>(res.im[i]));
    out.residuals.push_back(static_cast<double>(res.residuals[i]));
  }
  return out;
}

void solve_cluster(const Trimmed& t, const std::vector<std::size_t>& h, const SolveOptions& opts, bool split_ok,
                   std::vector<PieceRoots>& out, bool& extended) {
  const PieceScale s = piece_scale(t, h);
  if (opts.precision == Precision::automatic && piece_fits<double>(t, h, s)) {
    out.push_back(run_piece<double>(t, h, s, opts));
    return;
  }
  if (piece_fits<long double>(t, h, s) || h.size() == 2 || !split_ok) {
    extended = true;
    out.push_back(run_piece<long double>(t, h, s, opts));
    return;
  }
  // Split at the widest gap between consecutive edge radii.
  std::size_t cut = 1;
  double widest = -1;
  for (std::size_t v = 1; v + 1 < h.size(); ++v) {
    const double gap = edge_radius(t.log2_abs, h, v) - edge_radius(t.log2_abs, h, v - 1);
    if (gap > widest) {
      widest = gap;
      cut = v;
    }
  }
  solve_cluster(t, {h.begin(), h.begin() + static_cast<std::ptrdiff_t>(cut) + 1}, opts, true, out, extended);
  solve_cluster(t, {h.begin() + static_cast<std::ptrdiff_t>(cut), h.end()}, opts, true, out, extended);
}

// Residual of the trimmed polynomial at 2^r w, in extended range.
double ext_residual(const Trimmed& t, std::complex<long double> w, std::int64_t r) {
  using detail::ExtComplex;
  using detail::ExtReal;
  const ExtComplex z = ExtComplex::normalized(w, r);
  const ExtReal az = ExtReal::normalized(std::abs(w), r);
  const std::size_t m = t.c.size() - 1;
  ExtComplex acc = ExtComplex::from(t.c[m]);
  ExtReal a = ExtReal::normalized(std::abs(acc.m), acc.e);
  for (std::size_t k = m; k-- > 0;) {
    const ExtComplex ck = ExtComplex::from(t.c[k]);
    acc = acc * z + ck;
    a = a * az + ExtReal::normalized(std::abs(ck.m), ck.e);
  }
  return static_cast<double>(detail::ratio(acc, a));
}

}  // namespace

double principal_arg(std::complex<double> z) {
  double a = std::arg(z);
  if (a < 0) a += kTwoPi;
  // Tiny negative angles round up to exactly 2 pi.
  if (a >= kTwoPi) a = 0;
  return a;
}

double RootSet::max_residual() const {
  double worst = 0;
  for (double r : residuals) worst = std::max(worst, r);
  return worst;
}

RootSet solve_roots(const Polynomial& p, double tol, int max_iter) {
  SolveOptions opts;
  opts.tol = tol;
  opts.max_iter = max_iter;
  return solve_roots(p, opts);
}

RootSet solve_roots(const Polynomial& p, const SolveOptions& opts) {
  if (p.is_zero()) throw std::invalid_argument("solve_roots: zero polynomial");
  if (p.effective_top() < 1) throw std::invalid_argument("solve_roots: constant polynomial has no roots");
  if (!(opts.tol > 0)) throw std::invalid_argument("solve_roots: tolerance must be positive");
  if (opts.max_iter < 1) throw std::invalid_argument("solve_roots: max_iter must be at least 1");

  const std::size_t zeros = p.origin_order();
  Trimmed t;
  for (std::size_t k = p.origin_order(); k <= p.effective_top(); ++k) {
    t.c.push_back(p[k]);
    t.log2_abs.push_back(p[k].is_zero() ? -std::numeric_limits<double>::infinity()
                                        : std::log2(std::abs(p[k].mantissa)) + p[k].exponent);
  }

  RootSet out;
  out.converged = true;
  std::vector<std::complex<double>> roots(zeros);
  std::vector<double> logmod(zeros, -std::numeric_limits<double>::infinity());
  std::vector<double> resid(zeros, 0.0);

  if (t.c.size() > 1) {
    const auto hull = upper_hull(t.log2_abs, 0, t.c.size() - 1);
    std::vector<PieceRoots> pieces;
    bool extended = false;
    const PieceScale whole = piece_scale(t, hull);
    const bool single = (opts.precision == Precision::automatic && piece_fits<double>(t, hull, whole)) ||
                        piece_fits<long double>(t, hull, whole);
    if (single) {
      solve_cluster(t, hull, opts, false, pieces, extended);
    } else {
      std::size_t start = 0;
      for (std::size_t v = 1; v + 1 < hull.size(); ++v) {
        const double gap = edge_radius(t.log2_abs, hull, v) - edge_radius(t.log2_abs, hull, v - 1);
        if (gap > kClusterGapLog2) {
          solve_cluster(t, {hull.begin() + static_cast<std::ptrdiff_t>(start),
                            hull.begin() + static_cast<std::ptrdiff_t>(v) + 1},
                        opts, true, pieces, extended);
          start = v;
        }
      }
      solve_cluster(t, {hull.begin() + static_cast<std::ptrdiff_t>(start), hull.end()}, opts, true, pieces,
                    extended);
    }
    out.extended_precision = extended;
    const bool whole_residual = pieces.size() == 1;
    for (const auto& piece : pieces) {
      out.iterations = std::max(out.iterations, piece.sweeps);
      for (std::size_t i = 0; i < piece.w.size(); ++i) {
        const std::complex<long double> w = piece.w[i];
        const double lm = static_cast<double>(std::log(std::abs(w)) +
                                              static_cast<long double>(piece.r) * std::numbers::ln2_v<long double>);
        const double ang = static_cast<double>(std::arg(w));
        std::complex<double> z;
        if (std::fabs(lm) < 700.0) {
          z = {static_cast<double>(std::ldexp(w.real(), static_cast<int>(piece.r))),
               static_cast<double>(std::ldexp(w.imag(), static_cast<int>(piece.r)))};
        } else {
          z = std::polar(std::exp(std::clamp(lm, -700.0, 700.0)), ang);
        }
        roots.push_back(z);
        logmod.push_back(lm);
        resid.push_back(whole_residual ? piece.residuals[i] : ext_residual(t, w, piece.r));
      }
    }
  }

  std::vector<std::size_t> order(roots.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> args(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) args[i] = principal_arg(roots[i]);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (logmod[a] != logmod[b]) return logmod[a] < logmod[b];
    return args[a] < args[b];
  });
  for (std::size_t i : order) {
    out.roots.push_back(roots[i]);
    out.log_moduli.push_back(logmod[i]);
    out.residuals.push_back(resid[i]);
    if (!(resid[i] <= opts.tol)) out.converged = false;
  }
  return out;
}

std::vector<std::complex<double>> newton_power_sums(const Polynomial& p, std::size_t max_power) {
  if (p.is_zero() || p[0].is_zero()) throw std::invalid_argument("newton_power_sums: zero constant term");
  if (max_power < 1 || max_power > p.effective_top()) {
    throw std::invalid_argument("newton_power_sums: need 1 <= L <= effective degree");
  }
  // a_k = c_k / c_0 are the coefficients of the monic reversed polynomial,
  // whose roots are 1/z_j.
  const auto& c0 = p[0];
  std::vector<std::complex<double>> a(max_power + 1);
  for (std::size_t k = 1; k <= max_power; ++k) {
    const auto& ck = p[k];
    const std::complex<double> q = ck.mantissa / c0.mantissa;
    const int shift = ck.exponent - c0.exponent;
    a[k] = {std::ldexp(q.real(), shift), std::ldexp(q.imag(), shift)};
  }
  std::vector<std::complex<double>> sums(max_power + 1);
  for (std::size_t l = 1; l <= max_power; ++l) {
    std::complex<double> acc = static_cast<double>(l) * a[l];
    for (std::size_t i = 1; i < l; ++i) acc += a[i] * sums[l - i];
    sums[l] = -acc;
  }
  return {sums.begin() + 1, sums.end()};
}

double log_vieta_modulus_product(const Polynomial& p) {
  if (p.is_zero() || p[0].is_zero()) throw std::invalid_argument("vieta_modulus_product: zero constant term");
  const auto& lead = p.coeffs().back();
  if (lead.is_zero()) throw std::invalid_argument("vieta_modulus_product: zero leading coefficient");
  return std::log(std::abs(p[0].mantissa) / std::abs(lead.mantissa)) +
         static_cast<double>(p[0].exponent - lead.exponent) * std::numbers::ln2;
}

double vieta_modulus_product(const Polynomial& p) { return std::exp(log_vieta_modulus_product(p)); }

double smallest_root_lower_bound(const Polynomial& p) {
  if (p.is_zero() || p[0].is_zero()) throw std::invalid_argument("smallest_root_lower_bound: zero constant term");
  const std::size_t n = p.effective_top();
  if (n < 1) throw std::invalid_argument("smallest_root_lower_bound: constant polynomial");
  double largest = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k <= n; ++k) largest = std::max(largest, p[k].log_abs());
  const double log_bound = p[0].log_abs() - std::log(static_cast<double>(n)) - largest;
  return std::min(1.0, std::exp(log_bound));
}

}  // namespace polyzero
