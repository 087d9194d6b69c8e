#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "polyzero/distributions.hpp"
#include "polyzero/realroots.hpp"

using namespace polyzero;

namespace {

RealPoly sampled_real(const char* law, std::size_t n, std::uint64_t seed, std::uint64_t trial = 0) {
  return real_coefficients(sample_coefficients(make_distribution(law), n, {seed, trial}).polynomial());
}

long double horner(const RealPoly& p, long double x) {
  long double s = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) s = s * x + *it;
  return s;
}

}  // namespace

TEST_CASE("sign_changes") {
  CHECK(sign_changes(std::vector<double>{1, -1, 1}) == 2);
  CHECK(sign_changes(std::vector<double>{1, 0, -1}) == 1);
  CHECK(sign_changes(std::vector<double>{0, 0, 0}) == 0);
  CHECK(sign_changes(std::vector<double>{}) == 0);
  CHECK(sign_changes(std::vector<double>{-2, 0, 0, -1, 3, 0, -0.5}) == 2);
}

TEST_CASE("derivative sign sequence") {
  const RealPoly p{-1, 0, 1};
  CHECK(derivative_sign_sequence(p, -2) == std::vector<double>{3, -4, 2});
  CHECK(derivative_sign_sequence(p, 2) == std::vector<double>{3, 4, 2});
  CHECK(derivative_sign_changes(p, -2) == 2);
  CHECK(derivative_sign_changes(p, 2) == 0);
  CHECK(derivative_sign_sequence(RealPoly{0, 0, 0, 1}, -1) == std::vector<double>{-1, 3, -6, 6});

  // Beyond the Cauchy bound every derivative has the sign of the leading coefficient.
  for (std::uint64_t t = 0; t < 50; ++t) {
    const RealPoly q = sampled_real("gaussian", 1 + t % 40, 3, t);
    const double b = cauchy_bound(q);
    CHECK(derivative_sign_changes(q, b, Arithmetic::exact) == 0);
    CHECK(derivative_sign_changes(q, b, Arithmetic::floating) == 0);
    CHECK(derivative_sign_changes(q, -b, Arithmetic::exact) == q.size() - 1);
  }
}

TEST_CASE("budan_fourier_bound examples") {
  CHECK(budan_fourier_bound(RealPoly{-1, 0, 1}, -2, 2) == 2);
  CHECK(budan_fourier_bound(RealPoly{1, 0, 1}, -2, 2) == 2);
  CHECK(budan_fourier_bound(RealPoly{0, 0, 0, 1}, -1, 2) == 3);
  CHECK(sturm_count(RealPoly{0, 0, 0, 1}, -1, 2).count == 1);
  CHECK_THROWS_AS(budan_fourier_bound(RealPoly{-1, 0, 1}, 1, 2), std::invalid_argument);
}

TEST_CASE("sturm_count examples") {
  for (Arithmetic mode : {Arithmetic::floating, Arithmetic::exact}) {
    CHECK(sturm_count(RealPoly{-1, 0, 1}, -2, 2, mode).count == 2);
    CHECK(sturm_count(RealPoly{1, 0, 1}, -2, 2, mode).count == 0);
    CHECK(sturm_count(RealPoly{-6, 11, -6, 1}, 0.5, 2.5, mode).count == 2);
    // Half-open (a, b]: a root at b is counted, p(b) = 0 is rejected.
    CHECK_THROWS_AS(sturm_count(RealPoly{-6, 11, -6, 1}, 0.5, 2.0, mode), std::invalid_argument);
    CHECK_THROWS_AS(sturm_count(RealPoly{5}, 0, 1, mode), std::invalid_argument);
  }
  CHECK(sturm_count(RealPoly{-1, 0, 1}, -2, 2).exact);
}

TEST_CASE("Sturm chain structure") {
  const RealPoly p = sampled_real("gaussian", 25, 4);
  const SturmChain chain(p);
  const auto& c = chain.chain();
  for (std::size_t k = 1; k < c.size(); ++k) CHECK(c[k].size() < c[k - 1].size());
  CHECK(c.back().size() == 1);  // square-free: the chain ends in a constant
}

TEST_CASE("Budan-Fourier dominates the exact count by an even number") {
  std::mt19937_64 rng(20240607);
  std::uniform_int_distribution<std::size_t> deg(1, 30);
  std::uniform_real_distribution<double> end(-3, 3);
  std::normal_distribution<double> coeff;
  int checked = 0;
  while (checked < 1000) {
    RealPoly p(deg(rng) + 1);
    for (auto& c : p) c = coeff(rng);
    double a = end(rng), b = end(rng);
    if (a > b) std::swap(a, b);
    const std::size_t bf = budan_fourier_bound(p, a, b, Arithmetic::exact);
    const SturmResult exact = sturm_count(p, a, b, Arithmetic::exact);
    CHECK(bf >= exact.count);
    CHECK((bf - exact.count) % 2 == 0);
    // The guarded floating chain agrees with the exact one.
    CHECK(sturm_count(p, a, b, Arithmetic::floating).count == exact.count);
    ++checked;
  }
}

TEST_CASE("Z_p does not increase and bounds the roots past 1") {
  for (std::uint64_t t = 0; t < 40; ++t) {
    const RealPoly p = sampled_real("gaussian", 2 + t % 29, 5, t);
    std::size_t prev = p.size();
    for (int i = -300; i <= 300; ++i) {
      const std::size_t z = derivative_sign_changes(p, i / 100.0 + 1e-7, Arithmetic::exact);
      CHECK(z <= prev);
      prev = z;
    }
    const double b = cauchy_bound(p);
    CHECK(sturm_count(p, 1, b, Arithmetic::exact).count <= derivative_sign_changes(p, 1, Arithmetic::exact));
  }
}

TEST_CASE("symmetry reductions") {
  for (std::uint64_t t = 0; t < 40; ++t) {
    RealPoly p = sampled_real("gaussian", 3 + t % 40, 6, t);
    const double b = cauchy_bound(p);
    const std::size_t pos = sturm_count(p, 0, b, Arithmetic::exact).count;
    const std::size_t neg = sturm_count(reflect(p), 0, b, Arithmetic::exact).count;
    CHECK(count_real_roots(p) == pos + neg);

    const RealPoly r = reverse(p);
    CHECK(sturm_count(p, 0, 1, Arithmetic::exact).count == sturm_count(r, 1, cauchy_bound(r), Arithmetic::exact).count);

    // Zeros at the origin count once whatever their multiplicity.
    RealPoly shifted(t % 3 + 1, 0.0);
    shifted.insert(shifted.end(), p.begin(), p.end());
    CHECK(count_real_roots(shifted) == pos + neg + 1);
  }
}

TEST_CASE("count_real_roots examples") {
  CHECK(count_real_roots(RealPoly{-1, 0, 1}) == 2);
  CHECK(count_real_roots(RealPoly{1, 0, 1}) == 0);
  CHECK(count_real_roots(RealPoly{0, 0, 0, 1}) == 1);
  CHECK(count_real_roots(RealPoly{0, 0, -1, 0, 1}) == 3);
  CHECK(count_real_roots(RealPoly{1, -2, 1}) == 1);  // distinct roots
  CHECK_THROWS_AS(count_real_roots(RealPoly{0, 0}), std::invalid_argument);
  CHECK(count_real_roots_report(RealPoly{-1, 0, 1}).method == RealCountMethod::exact_sturm);
}

TEST_CASE("degree-100 Rademacher polynomial against a grid count") {
  const RealPoly p = sampled_real("rademacher", 100, 100);
  const double b = cauchy_bound(p);

  // Isolate every real root to width 1e-6 by Sturm bisection, then take the
  // smallest distance between isolating intervals as the resolution.
  const SturmChain chain(p);
  std::size_t guards = 0;
  auto var = [&](double x) { return chain.variations(x, guards); };
  std::vector<std::pair<double, double>> stack{{-b, b}}, isolated;
  while (!stack.empty()) {
    const auto [lo, hi] = stack.back();
    stack.pop_back();
    const std::size_t k = var(lo) - var(hi);
    if (k == 0) continue;
    if (k == 1 && hi - lo < 1e-6) {
      isolated.emplace_back(lo, hi);
      continue;
    }
    const double mid = lo + (hi - lo) * 0.5078125;  // off-centre to avoid dyadic roots
    stack.emplace_back(lo, mid);
    stack.emplace_back(mid, hi);
  }
  REQUIRE(guards == 0);
  std::sort(isolated.begin(), isolated.end());
  double gap = 2 * b;
  for (std::size_t k = 1; k < isolated.size(); ++k) gap = std::min(gap, isolated[k].first - isolated[k - 1].second);
  REQUIRE(gap > 1e-4);

  // Sign changes of p on a grid four times finer than the gap, each one
  // refined by bisection to make sure it brackets a root.
  const double h = gap / 4;
  std::size_t brackets = 0;
  long double x0 = -b, f0 = horner(p, x0);
  for (long double x1 = -b + h; x1 <= b; x1 += h) {
    const long double f1 = horner(p, x1);
    if ((f0 < 0) != (f1 < 0)) {
      long double lo = x0, hi = x1, flo = f0;
      for (int it = 0; it < 60; ++it) {
        const long double mid = (lo + hi) / 2, fm = horner(p, mid);
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      CHECK(std::fabs(static_cast<double>(horner(p, (lo + hi) / 2))) < 1e-6);
      ++brackets;
    }
    x0 = x1;
    f0 = f1;
  }
  CHECK(brackets == isolated.size());
  CHECK(count_real_roots(p) == brackets);
  CHECK(count_real_roots_report(p).method == RealCountMethod::inclusion_disks);
}

TEST_CASE("inclusion disks agree with the exact Sturm count above the exact cutoff") {
  for (std::size_t n : {65, 100, 150}) {
    for (std::uint64_t t = 0; t < 3; ++t) {
      const RealPoly p = sampled_real(t == 2 ? "uniform" : "gaussian", n, 7, t);
      const double b = cauchy_bound(p);
      const RealRootReport rep = count_real_roots_report(p);
      CHECK(rep.method == RealCountMethod::inclusion_disks);
      CHECK(rep.count == sturm_count(p, -b, b, Arithmetic::exact).count);
    }
  }
}

TEST_CASE("cauchy_bound, reflect, reverse") {
  CHECK(cauchy_bound(RealPoly{-1, 0, 1}) == 2.0);
  CHECK(cauchy_bound(RealPoly{-6, 11, -6, 1}) == 16.0);
  CHECK(reflect(RealPoly{1, 2, 3, 4}) == RealPoly{1, -2, 3, -4});
  CHECK(reverse(RealPoly{1, 2, 3, 4}) == RealPoly{4, 3, 2, 1});
}

TEST_CASE("ray_real_projection") {
  const Polynomial p{std::complex<double>(1, 2), std::complex<double>(-3, 0.5), std::complex<double>(0.25, -1),
                     std::complex<double>(2, 2)};
  CHECK(ray_real_projection(p, 0, 1) == RealPoly{1, -3, 0.25, 2});
  CHECK(ray_real_projection(p, 1, 2) == RealPoly{1, 3, 0.25, -2});

  const Polynomial all_i{std::complex<double>(0, 1), std::complex<double>(0, 1), std::complex<double>(0, 1),
                         std::complex<double>(0, 1), std::complex<double>(0, 1), std::complex<double>(0, 1)};
  const RealPoly eta = ray_real_projection(all_i, 1, 4);
  CHECK(eta == RealPoly{0, -1, 0, 1, 0, -1});

  // A generic angle agrees with direct complex arithmetic.
  const RealPoly g = ray_real_projection(p, 1, 7);
  for (std::size_t k = 0; k < 4; ++k) {
    const double want = std::real(p[k].value() * std::polar(1.0, 2 * M_PI * static_cast<double>(k) / 7));
    CHECK(g[k] == doctest::Approx(want).epsilon(1e-14));
  }
  CHECK_THROWS_AS(ray_real_projection(p, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(ray_real_projection(p, 3, 2), std::invalid_argument);
}

TEST_CASE("real_coefficients rejects complex input") {
  CHECK_THROWS_AS(real_coefficients(Polynomial{std::complex<double>(1, 1)}), std::invalid_argument);
  CHECK(real_coefficients(Polynomial{1, -2}) == RealPoly{1, -2});
}
