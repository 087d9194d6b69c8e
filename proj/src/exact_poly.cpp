#include "exact_poly.hpp"

#include <climits>
#include <cmath>
#include <stdexcept>

namespace polyzero::detail {

namespace {

void strip(IntPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

IntPoly derivative(const IntPoly& p) {
  IntPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<unsigned long>(k));
  strip(d);
  return d;
}

void make_primitive(IntPoly& p) {
  mpz_class g = 0;
  for (const auto& c : p) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1) {
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }
}

// Returns r and k with lc(b)^k a = q b + r, deg r < deg b.
IntPoly pseudo_remainder(IntPoly r, const IntPoly& b, std::size_t& k) {
  const std::size_t db = b.size() - 1;
  const mpz_class& lb = b.back();
  k = 0;
  while (r.size() > db) {
    const std::size_t shift = r.size() - 1 - db;
    const mpz_class lr = r.back();
    for (auto& c : r) c *= lb;
    for (std::size_t j = 0; j <= db; ++j) r[j + shift] -= lr * b[j];
    ++k;
    strip(r);
  }
  return r;
}

}  // namespace

IntPoly to_integer_poly(std::span<const double> p) {
  int min_exp = INT_MAX;
  std::vector<std::pair<double, int>> parts;
  for (double c : p) {
    if (!std::isfinite(c)) throw std::invalid_argument("coefficients must be finite");
    int e = 0;
    const double f = std::frexp(c, &e);
    parts.emplace_back(std::ldexp(f, 53), e - 53);
    if (c != 0) min_exp = std::min(min_exp, e - 53);
  }
  IntPoly out;
  out.reserve(p.size());
  for (const auto& [m, e] : parts) {
    mpz_class v(m);
    if (m != 0) mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), static_cast<mp_bitcnt_t>(e - min_exp));
    out.push_back(v);
  }
  return out;
}

Dyadic to_dyadic(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("evaluation point must be finite");
  Dyadic d;
  if (x == 0) return d;
  int e = 0;
  const double f = std::frexp(x, &e);
  d.num = mpz_class(std::ldexp(f, 53));
  const int exp2 = e - 53;
  if (exp2 >= 0) {
    mpz_mul_2exp(d.num.get_mpz_t(), d.num.get_mpz_t(), static_cast<mp_bitcnt_t>(exp2));
  } else {
    d.s = static_cast<unsigned long>(-exp2);
  }
  return d;
}

int sign_at(const IntPoly& p, const Dyadic& x) {
  if (p.empty()) return 0;
  // 2^{s n} p(num / 2^s) = sum c_k num^k 2^{s (n - k)}.
  mpz_class v = p.back();
  mpz_class t;
  for (std::size_t k = p.size() - 1; k-- > 0;) {
    v *= x.num;
    mpz_mul_2exp(t.get_mpz_t(), p[k].get_mpz_t(), x.s * (p.size() - 1 - k));
    v += t;
  }
  return sgn(v);
}

std::vector<int> derivative_signs(const IntPoly& p, const Dyadic& x) {
  // With den = 2^s, den^n p(num/den + t) = sum_j b_j (den t)^j where b are
  // the coefficients of q(u) = sum c_k den^{n-k} u^k shifted by num.
  const std::size_t n = p.size() - 1;
  IntPoly b(p.size());
  for (std::size_t k = 0; k <= n; ++k) mpz_mul_2exp(b[k].get_mpz_t(), p[k].get_mpz_t(), x.s * (n - k));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = n; k-- > i;) b[k] += x.num * b[k + 1];
  }
  std::vector<int> signs(p.size());
  for (std::size_t j = 0; j <= n; ++j) signs[j] = sgn(b[j]);
  return signs;
}

std::vector<IntPoly> sturm_chain(const IntPoly& p) {
  std::vector<IntPoly> chain;
  IntPoly a = p;
  strip(a);
  if (a.size() < 2) throw std::invalid_argument("Sturm chain needs a nonconstant polynomial");
  make_primitive(a);
  chain.push_back(a);
  IntPoly b = derivative(a);
  make_primitive(b);
  chain.push_back(b);
  while (chain.back().size() > 1) {
    const IntPoly& prev = chain[chain.size() - 2];
    const IntPoly& cur = chain.back();
    std::size_t k = 0;
    IntPoly r = pseudo_remainder(prev, cur, k);
    if (r.empty()) break;
    // rem = r / lc^k, so -rem has the sign of -r times sign(lc)^k.
    const bool flip = !(sgn(cur.back()) < 0 && k % 2 == 1);
    if (flip) {
      for (auto& c : r) c = -c;
    }
    make_primitive(r);
    chain.push_back(std::move(r));
  }
  return chain;
}

std::size_t variations_at(const std::vector<IntPoly>& chain, const Dyadic& x) {
  std::size_t count = 0;
  int last = 0;
  for (const auto& q : chain) {
    const int s = sign_at(q, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace polyzero::detail
