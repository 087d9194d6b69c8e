#pragma once

// Aberth-Ehrlich iteration on a single polynomial whose coefficients fit the
// working type T. Callers handle trimming, scaling and initial guesses.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace polyzero::detail {

template <class T>
struct AberthResult {
  std::vector<T> re;
  std::vector<T> im;
  std::vector<T> residuals;
  int sweeps = 0;
};

template <class T>
struct Coeffs {
  std::vector<T> re;
  std::vector<T> im;
  std::vector<T> abs;

  explicit Coeffs(std::span<const std::complex<T>> c) : re(c.size()), im(c.size()), abs(c.size()) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      re[k] = c[k].real();
      im[k] = c[k].imag();
      abs[k] = std::abs(c[k]);
    }
  }
  std::size_t degree() const { return re.size() - 1; }
};

// Newton correction p(z)/p'(z) and the backward residual |p(z)| / sum |c_k||z|^k.
// For |z| > 1 the reversed polynomial is evaluated at 1/z so nothing overflows.
template <class T>
inline void newton_ratio(const Coeffs<T>& c, T zr, T zi, T& nr, T& ni, T& resid) {
  using std::sqrt;
  const std::size_t m = c.degree();
  const T mod2 = zr * zr + zi * zi;
  T pr, pi, dr = 0, di = 0, a;
  if (mod2 <= T(1)) {
    const T az = sqrt(mod2);
    pr = c.re[m];
    pi = c.im[m];
    a = c.abs[m];
    for (std::size_t k = m; k-- > 0;) {
      const T tr = dr * zr - di * zi + pr;
      const T ti = dr * zi + di * zr + pi;
      dr = tr;
      di = ti;
      const T ur = pr * zr - pi * zi + c.re[k];
      const T ui = pr * zi + pi * zr + c.im[k];
      pr = ur;
      pi = ui;
      a = a * az + c.abs[k];
    }
    resid = std::hypot(pr, pi) / a;
    if (pr == 0 && pi == 0) {
      nr = ni = 0;
      return;
    }
    const T d2 = dr * dr + di * di;
    if (d2 == 0) {
      nr = ni = std::numeric_limits<T>::infinity();
      return;
    }
    nr = (pr * dr + pi * di) / d2;
    ni = (pi * dr - pr * di) / d2;
    return;
  }
  const T yr = zr / mod2;
  const T yi = -zi / mod2;
  const T ay = T(1) / sqrt(mod2);
  pr = c.re[0];
  pi = c.im[0];
  a = c.abs[0];
  for (std::size_t k = 1; k <= m; ++k) {
    const T tr = dr * yr - di * yi + pr;
    const T ti = dr * yi + di * yr + pi;
    dr = tr;
    di = ti;
    const T ur = pr * yr - pi * yi + c.re[k];
    const T ui = pr * yi + pi * yr + c.im[k];
    pr = ur;
    pi = ui;
    a = a * ay + c.abs[k];
  }
  resid = std::hypot(pr, pi) / a;
  if (pr == 0 && pi == 0) {
    nr = ni = 0;
    return;
  }
  // p/p' = 1 / (y (m - y r'/r)) with r the reversed polynomial.
  const T p2 = pr * pr + pi * pi;
  const T qr = (dr * pr + di * pi) / p2;
  const T qi = (di * pr - dr * pi) / p2;
  const T tr = T(m) - (yr * qr - yi * qi);
  const T ti = -(yr * qi + yi * qr);
  const T sr = yr * tr - yi * ti;
  const T si = yr * ti + yi * tr;
  const T s2 = sr * sr + si * si;
  nr = sr / s2;
  ni = -si / s2;
}

// Accumulates sum over j in [lo, hi) of 1/(z - x_j).
template <class T>
inline void inverse_distance_sum(const T* xr, const T* xi, std::size_t lo, std::size_t hi, T zr, T zi,
                                 T& sr, T& si) {
  T ar = 0, ai = 0;
#pragma omp simd reduction(+ : ar, ai)
  for (std::size_t j = lo; j < hi; ++j) {
    const T dr = zr - xr[j];
    const T di = zi - xi[j];
    const T inv = T(1) / (dr * dr + di * di);
    ar += dr * inv;
    ai -= di * inv;
  }
  sr += ar;
  si += ai;
}

template <class T>
AberthResult<T> aberth(std::span<const std::complex<T>> coeffs, std::span<const std::complex<T>> init,
                       T tol, int max_iter) {
  const Coeffs<T> c(coeffs);
  const std::size_t m = c.degree();
  const T eps = std::numeric_limits<T>::epsilon();
  AberthResult<T> out;
  out.re.resize(m);
  out.im.resize(m);
  out.residuals.assign(m, T(0));
  for (std::size_t i = 0; i < m; ++i) {
    out.re[i] = init[i].real();
    out.im[i] = init[i].imag();
  }
  std::vector<char> active(m, 1);
  T* xr = out.re.data();
  T* xi = out.im.data();
  for (int sweep = 1; sweep <= max_iter; ++sweep) {
    bool any = false;
    for (std::size_t i = 0; i < m; ++i) {
      if (!active[i]) continue;
      any = true;
      const T zr = xr[i], zi = xi[i];
      T nr, ni, resid;
      newton_ratio(c, zr, zi, nr, ni, resid);
      const bool last = resid <= tol;
      T sr = 0, si = 0;
      inverse_distance_sum(xr, xi, 0, i, zr, zi, sr, si);
      inverse_distance_sum(xr, xi, i + 1, m, zr, zi, sr, si);
      // delta = N / (1 - N S) = 1 / (1/N - S); the second form survives
      // |N S| overflowing when two iterates nearly coincide.
      T dr, di;
      if (nr == 0 && ni == 0) {
        dr = di = 0;
      } else {
        const std::complex<T> w = T(1) / std::complex<T>(nr, ni) - std::complex<T>(sr, si);
        const std::complex<T> delta = T(1) / w;
        dr = delta.real();
        di = delta.imag();
      }
      if (!std::isfinite(dr) || !std::isfinite(di)) {
        dr = nr;
        di = ni;
      }
      if (!std::isfinite(dr) || !std::isfinite(di)) {
        // p'(z) vanished: nudge the iterate off the critical point.
        const T scale = std::max(T(1), std::hypot(zr, zi));
        dr = scale * T(1e-3) * static_cast<T>(i + 1) / static_cast<T>(m);
        di = scale * T(1e-3);
      }
      xr[i] = zr - dr;
      xi[i] = zi - di;
      if (last || std::hypot(dr, di) <= 2 * eps * std::hypot(xr[i], xi[i])) active[i] = 0;
    }
    if (!any) break;
    out.sweeps = sweep;
  }
  for (std::size_t i = 0; i < m; ++i) {
    T nr, ni;
    newton_ratio(c, xr[i], xi[i], nr, ni, out.residuals[i]);
  }
  return out;
}

}  // namespace polyzero::detail
