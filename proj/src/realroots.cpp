#include "polyzero/realroots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "exact_poly.hpp"
#include "polyzero/roots.hpp"

namespace polyzero {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Drops trailing zeros; throws on the zero polynomial.
std::span<const double> trimmed(std::span<const double> p) {
  std::size_t top = p.size();
  while (top > 0 && p[top - 1] == 0) --top;
  if (top == 0) throw std::invalid_argument("zero polynomial");
  for (double c : p) {
    if (!std::isfinite(c)) throw std::invalid_argument("coefficients must be finite");
  }
  return p.first(top);
}

bool use_exact(Arithmetic mode, std::size_t degree) {
  return mode == Arithmetic::exact || (mode == Arithmetic::automatic && degree <= kExactMaxDegree);
}

// Horner value and the running bound sum |c_k| |x|^k.
void horner(std::span<const double> p, double x, double& value, double& bound) {
  value = p.back();
  bound = std::fabs(p.back());
  const double ax = std::fabs(x);
  for (std::size_t k = p.size() - 1; k-- > 0;) {
    value = value * x + p[k];
    bound = bound * ax + std::fabs(p[k]);
  }
}

std::size_t count_changes(const std::vector<int>& signs) {
  std::size_t count = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

void check_endpoints(std::span<const double> p, double a, double b) {
  if (!(a < b)) throw std::invalid_argument("interval must satisfy a < b");
  const auto ip = detail::to_integer_poly(p);
  if (detail::sign_at(ip, detail::to_dyadic(a)) == 0 || detail::sign_at(ip, detail::to_dyadic(b)) == 0) {
    throw std::invalid_argument("polynomial vanishes at an interval endpoint");
  }
}

RealPoly normalized(RealPoly p) {
  double m = 0;
  for (double c : p) m = std::max(m, std::fabs(c));
  if (m > 0) {
    for (double& c : p) c /= m;
  }
  return p;
}

// --- certification by inclusion disks -------------------------------------

// log of an upper bound on |p(z)|, Horner rounding included. Beyond the unit
// circle the reversed polynomial is evaluated at 1/z.
double log_abs_upper(std::span<const double> p, std::complex<double> z) {
  const std::size_t n = p.size() - 1;
  const double gamma = 4.0 * static_cast<double>(n + 2) * kEps;
  const double az = std::abs(z);
  std::complex<double> v;
  double bound;
  double log_scale = 0;
  if (az <= 1) {
    v = p.back();
    bound = std::fabs(p.back());
    for (std::size_t k = n; k-- > 0;) {
      v = v * z + p[k];
      bound = bound * az + std::fabs(p[k]);
    }
  } else {
    const std::complex<double> y = 1.0 / z;
    const double ay = 1.0 / az;
    v = p[0];
    bound = std::fabs(p[0]);
    for (std::size_t k = 1; k <= n; ++k) {
      v = v * y + p[k];
      bound = bound * ay + std::fabs(p[k]);
    }
    log_scale = static_cast<double>(n) * std::log(az);
  }
  return log_scale + std::log(std::abs(v) + gamma * bound);
}

// Weierstrass inclusion radii n |p(z_i)| / (|c_n| prod_{j != i} |z_i - z_j|).
std::vector<double> inclusion_radii(std::span<const double> p, const std::vector<std::complex<double>>& z) {
  const std::size_t n = z.size();
  const double log_n = std::log(static_cast<double>(n));
  const double log_lead = std::log(std::fabs(p.back()));
  std::vector<double> radii(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Product of squared distances, renormalized before it leaves range.
    double prod = 1;
    long exponent = 0;
    bool coincident = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double dr = z[i].real() - z[j].real();
      const double di = z[i].imag() - z[j].imag();
      const double d = dr * dr + di * di;
      if (d == 0) {
        coincident = true;
        break;
      }
      prod *= d;
      if (prod < 1e-250 || prod > 1e250) {
        int e = 0;
        prod = std::frexp(prod, &e);
        exponent += e;
      }
    }
    if (coincident) {
      radii[i] = std::numeric_limits<double>::infinity();
      continue;
    }
    const double log_prod = 0.5 * (std::log(prod) + static_cast<double>(exponent) * std::numbers::ln2);
    // Slack for rounding in the distances and logarithms.
    radii[i] = std::exp(log_n + log_abs_upper(p, z[i]) - log_lead - log_prod) * 1.01;
  }
  return radii;
}

bool disks_apart(std::complex<double> a, double ra, std::complex<double> b, double rb) {
  const double dr = a.real() - b.real();
  const double di = a.imag() - b.imag();
  const double r = ra + rb;
  return dr * dr + di * di > r * r;
}

struct DiskCount {
  bool certified = false;
  std::size_t count = 0;
};

DiskCount certify(std::span<const double> p, const std::vector<std::complex<double>>& z) {
  const std::size_t n = z.size();
  const auto r = inclusion_radii(p, z);
  DiskCount out;
  out.certified = true;
  for (std::size_t i = 0; i < n && out.certified; ++i) {
    if (!std::isfinite(r[i])) {
      out.certified = false;
      break;
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!disks_apart(z[i], r[i], z[j], r[j])) {
        out.certified = false;
        break;
      }
    }
  }
  if (!out.certified) {
    for (std::size_t i = 0; i < n; ++i) out.count += std::fabs(z[i].imag()) <= r[i];
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::fabs(z[i].imag()) > r[i]) continue;
    // The single root in disk i is real if its mirror image cannot lie in
    // any other disk.
    const std::complex<double> mirror = std::conj(z[i]);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && !disks_apart(mirror, r[i], z[j], r[j])) {
        out.certified = false;
        break;
      }
    }
    ++out.count;
  }
  return out;
}

}  // namespace

std::size_t sign_changes(std::span<const double> values) {
  std::size_t count = 0;
  int last = 0;
  for (double v : values) {
    const int s = (v > 0) - (v < 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

RealPoly taylor_shift(std::span<const double> p, double a) {
  RealPoly b(p.begin(), p.end());
  const std::size_t n = b.empty() ? 0 : b.size() - 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = n; k-- > i;) b[k] += a * b[k + 1];
  }
  return b;
}

std::vector<double> derivative_sign_sequence(std::span<const double> p, double x) {
  const auto q = trimmed(p);
  if (q.size() < 2) throw std::invalid_argument("derivative sequence needs degree >= 1");
  RealPoly t = taylor_shift(q, x);
  double factorial = 1;
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (j > 1) factorial *= static_cast<double>(j);
    if (t[j] != 0) t[j] *= factorial;
  }
  return t;
}

std::size_t derivative_sign_changes(std::span<const double> p, double x, Arithmetic mode) {
  const auto q = trimmed(p);
  if (q.size() < 2) throw std::invalid_argument("derivative sequence needs degree >= 1");
  if (use_exact(mode, q.size() - 1)) {
    return count_changes(detail::derivative_signs(detail::to_integer_poly(q), detail::to_dyadic(x)));
  }
  return sign_changes(derivative_sign_sequence(q, x));
}

std::size_t budan_fourier_bound(std::span<const double> p, double a, double b, Arithmetic mode) {
  const auto q = trimmed(p);
  if (q.size() < 2) throw std::invalid_argument("budan_fourier_bound: degree must be at least 1");
  check_endpoints(q, a, b);
  const std::size_t za = derivative_sign_changes(q, a, mode);
  const std::size_t zb = derivative_sign_changes(q, b, mode);
  // Z_p is non-increasing; a rounding artefact in floating mode cannot make
  // the bound negative.
  return za > zb ? za - zb : 0;
}

SturmChain::SturmChain(std::span<const double> p) {
  const auto q = trimmed(p);
  if (q.size() < 2) throw std::invalid_argument("Sturm chain needs a nonconstant polynomial");
  chain_.push_back(normalized({q.begin(), q.end()}));
  RealPoly d(q.size() - 1);
  for (std::size_t k = 1; k < q.size(); ++k) d[k - 1] = static_cast<double>(k) * q[k];
  chain_.push_back(normalized(std::move(d)));
  while (chain_.back().size() > 1) {
    const RealPoly& a = chain_[chain_.size() - 2];
    const RealPoly& b = chain_.back();
    RealPoly r = a;
    const std::size_t db = b.size() - 1;
    double magnitude = 1;
    for (std::size_t k = r.size() - 1; k >= db; --k) {
      const double f = r[k] / b[db];
      magnitude = std::max(magnitude, std::fabs(f));
      for (std::size_t j = 0; j <= db; ++j) r[k - db + j] -= f * b[j];
      r[k] = 0;
      if (k == 0) break;
    }
    // Anything at the rounding level of the elimination counts as zero.
    const double floor = 8.0 * static_cast<double>(a.size()) * kEps * magnitude;
    r.resize(db);
    while (!r.empty() && std::fabs(r.back()) <= floor) r.pop_back();
    if (r.empty()) break;
    for (double& c : r) c = -c;
    chain_.push_back(normalized(std::move(r)));
  }
}

std::size_t SturmChain::variations(double x, std::size_t& guard_events) const {
  const double h = 1e-9 * (1 + std::fabs(x));
  std::size_t count = 0;
  int last = 0;
  for (const auto& q : chain_) {
    int s = 0;
    for (double at : {x, x + h, x - h}) {
      double v, bound;
      horner(q, at, v, bound);
      const double err = 2.0 * static_cast<double>(q.size()) * kEps * bound;
      if (std::fabs(v) > err) {
        s = v > 0 ? 1 : -1;
        break;
      }
      ++guard_events;
    }
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

SturmResult sturm_count(std::span<const double> p, double a, double b, Arithmetic mode) {
  const auto q = trimmed(p);
  if (q.size() < 2) throw std::invalid_argument("sturm_count: constant polynomial");
  check_endpoints(q, a, b);
  SturmResult out;
  if (use_exact(mode, q.size() - 1)) {
    const auto chain = detail::sturm_chain(detail::to_integer_poly(q));
    const std::size_t va = detail::variations_at(chain, detail::to_dyadic(a));
    const std::size_t vb = detail::variations_at(chain, detail::to_dyadic(b));
    out.count = va - vb;
    out.exact = true;
    return out;
  }
  const SturmChain chain(q);
  const std::size_t va = chain.variations(a, out.guard_events);
  const std::size_t vb = chain.variations(b, out.guard_events);
  out.count = va > vb ? va - vb : 0;
  return out;
}

double cauchy_bound(std::span<const double> p) {
  const auto q = trimmed(p);
  const double lead = std::fabs(q.back());
  double m = 0;
  for (std::size_t k = 0; k + 1 < q.size(); ++k) m = std::max(m, std::fabs(q[k]) / lead);
  return std::exp2(std::ceil(std::log2(1 + m)));
}

RealRootReport count_real_roots_report(std::span<const double> p) {
  const auto full = trimmed(p);
  std::size_t bottom = 0;
  while (full[bottom] == 0) ++bottom;
  const auto q = full.subspan(bottom);
  RealRootReport out;
  const std::size_t origin = bottom > 0 ? 1 : 0;
  if (q.size() < 2) {
    out.count = origin;
    return out;
  }
  const std::size_t degree = q.size() - 1;
  if (degree <= kExactMaxDegree) {
    // +-B sits strictly outside every root, so neither endpoint vanishes.
    const double bound = cauchy_bound(q);
    out.count = sturm_count(q, -bound, bound, Arithmetic::exact).count + origin;
    return out;
  }
  const Polynomial poly = Polynomial::from_real(q);
  SolveOptions opts;
  DiskCount disks;
  for (Precision precision : {Precision::automatic, Precision::extended}) {
    opts.precision = precision;
    const RootSet rs = solve_roots(poly, opts);
    disks = certify(q, rs.roots);
    out.extended_precision = precision == Precision::extended;
    if (disks.certified) break;
  }
  out.method = disks.certified ? RealCountMethod::inclusion_disks : RealCountMethod::uncertified;
  out.count = disks.count + origin;
  return out;
}

std::size_t count_real_roots(std::span<const double> p) { return count_real_roots_report(p).count; }

RealPoly reflect(std::span<const double> p) {
  RealPoly out(p.begin(), p.end());
  for (std::size_t k = 1; k < out.size(); k += 2) out[k] = -out[k];
  return out;
}

RealPoly reverse(std::span<const double> p) { return {p.rbegin(), p.rend()}; }

RealPoly real_coefficients(const Polynomial& p) {
  RealPoly out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) {
    if (c.mantissa.imag() != 0) throw std::invalid_argument("polynomial has a non-real coefficient");
    if (!c.fits_double()) throw std::range_error("coefficient outside double range");
    out.push_back(c.value().real());
  }
  return out;
}

RealPoly ray_real_projection(const Polynomial& p, std::int64_t q, std::int64_t den) {
  if (den <= 0) throw std::invalid_argument("ray_real_projection: denominator must be positive");
  if (q < 0 || q >= den) throw std::invalid_argument("ray_real_projection: need 0 <= q < den");
  RealPoly out;
  out.reserve(p.coeffs().size());
  for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
    const auto& c = p[k];
    if (!c.fits_double()) throw std::range_error("coefficient outside double range");
    const std::complex<double> v = c.value();
    // Angle 2 pi r / den with r = k q mod den, reduced exactly in integers.
    const std::int64_t r = static_cast<std::int64_t>((static_cast<__int128>(k) * q) % den);
    double cs, sn;
    if ((4 * static_cast<__int128>(r)) % den == 0) {
      static constexpr double kCos[] = {1, 0, -1, 0};
      static constexpr double kSin[] = {0, 1, 0, -1};
      const auto quarter = static_cast<std::size_t>((4 * static_cast<__int128>(r)) / den);
      cs = kCos[quarter];
      sn = kSin[quarter];
    } else {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den);
      cs = std::cos(angle);
      sn = std::sin(angle);
    }
    out.push_back(v.real() * cs - v.imag() * sn);
  }
  return out;
}

}  // namespace polyzero
