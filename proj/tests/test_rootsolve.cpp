#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "polyzero/distributions.hpp"
#include "polyzero/roots.hpp"

using namespace polyzero;
using cd = std::complex<double>;

namespace {

Polynomial sampled(const char* law, std::size_t n, std::uint64_t seed, std::uint64_t trial = 0) {
  return sample_coefficients(make_distribution(law), n, {seed, trial}).polynomial();
}

// Zeros as eigenvalues of the companion matrix of the monic polynomial.
std::vector<cd> companion_roots(const std::vector<cd>& c) {
  const auto n = static_cast<Eigen::Index>(c.size() - 1);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) m(i, i - 1) = 1;
  for (Eigen::Index i = 0; i < n; ++i) m(i, n - 1) = -c[static_cast<std::size_t>(i)] / c.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

// Largest distance from a reference root to its partner in a greedy matching.
double matching_distance(std::vector<cd> got, const std::vector<cd>& want) {
  double worst = 0;
  for (const cd& w : want) {
    auto it = std::min_element(got.begin(), got.end(),
                               [&](const cd& a, const cd& b) { return std::abs(a - w) < std::abs(b - w); });
    worst = std::max(worst, std::abs(*it - w) / std::max(1.0, std::abs(w)));
    got.erase(it);
  }
  return worst;
}

bool sorted_by_modulus_then_arg(const RootSet& rs) {
  for (std::size_t k = 1; k < rs.size(); ++k) {
    const double a = rs.log_moduli[k - 1], b = rs.log_moduli[k];
    if (a > b || (a == b && principal_arg(rs.roots[k - 1]) > principal_arg(rs.roots[k]))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("z^2 - 1") {
  const RootSet rs = solve_roots(Polynomial{-1, 0, 1});
  REQUIRE(rs.converged);
  REQUIRE(rs.size() == 2);
  CHECK(rs.max_residual() <= 1e-12);
  CHECK(std::abs(rs.roots[0] - cd(1, 0)) <= 1e-15);
  CHECK(std::abs(rs.roots[1] - cd(-1, 0)) <= 1e-15);
}

TEST_CASE("z^3 - 1 gives the cube roots of unity") {
  const RootSet rs = solve_roots(Polynomial{-1, 0, 0, 1});
  REQUIRE(rs.converged);
  std::vector<cd> want;
  for (int k = 0; k < 3; ++k) want.push_back(std::polar(1.0, 2 * std::numbers::pi * k / 3));
  CHECK(matching_distance(rs.roots, want) <= 1e-14);
}

TEST_CASE("1 + z + ... + z^50 against z^51 - 1") {
  std::vector<cd> c(51, 1.0);
  const RootSet rs = solve_roots(Polynomial::from_values(c));
  REQUIRE(rs.converged);
  REQUIRE(rs.size() == 50);
  for (const cd& z : rs.roots) {
    CHECK(std::abs(std::pow(z, 51) - 1.0) <= 1e-12);
    CHECK(std::abs(z - 1.0) > 0.1);
  }
  // Distinct: 50 different 51st roots.
  std::vector<int> index;
  for (const cd& z : rs.roots) index.push_back(static_cast<int>(std::lround(principal_arg(z) * 51 / (2 * std::numbers::pi))));
  std::sort(index.begin(), index.end());
  CHECK(std::adjacent_find(index.begin(), index.end()) == index.end());
  CHECK(index.front() == 1);
  CHECK(index.back() == 50);
}

TEST_CASE("agrees with companion-matrix eigenvalues") {
  for (std::size_t n : {5, 10, 60, 200}) {
    for (const char* law : {"complex_gaussian", "gaussian", "rademacher"}) {
      CAPTURE(n);
      CAPTURE(law);
      const Polynomial p = sampled(law, n, 900 + n);
      const RootSet rs = solve_roots(p);
      REQUIRE(rs.converged);
      CHECK(rs.size() == n);
      CHECK(rs.max_residual() <= 1e-12);
      CHECK(sorted_by_modulus_then_arg(rs));
      CHECK(matching_distance(rs.roots, companion_roots(p.values())) <= 1e-8);
    }
  }
}

TEST_CASE("invalid input") {
  CHECK_THROWS_AS(solve_roots(Polynomial{0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(solve_roots(Polynomial{3}), std::invalid_argument);
  CHECK_THROWS_AS(solve_roots(Polynomial{3, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(solve_roots(Polynomial{1, 1}, 0.0, 10), std::invalid_argument);
}

TEST_CASE("non-convergence is reported, not thrown") {
  const Polynomial p = sampled("complex_gaussian", 300, 5);
  const RootSet rs = solve_roots(p, 1e-12, 1);
  CHECK_FALSE(rs.converged);
  CHECK(rs.size() == 300);
  CHECK(rs.max_residual() > 1e-12);
}

TEST_CASE("deterministic") {
  const Polynomial p = sampled("complex_gaussian", 400, 6);
  const RootSet a = solve_roots(p);
  const RootSet b = solve_roots(p);
  CHECK(a.roots == b.roots);
  CHECK(a.residuals == b.residuals);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("trimming zeros at the origin") {
  const Polynomial q = sampled("complex_gaussian", 20, 7);
  std::vector<Coefficient> shifted(3, Coefficient{});
  for (const auto& c : q.coeffs()) shifted.push_back(c);
  shifted.push_back(Coefficient{});  // zero above the top is ignored
  const Polynomial p(shifted);
  CHECK(p.origin_order() == 3);
  CHECK(p.effective_top() == 23);
  const RootSet rq = solve_roots(q);
  const RootSet rp = solve_roots(p);
  REQUIRE(rp.size() == 23);
  for (std::size_t k = 0; k < 3; ++k) CHECK(rp.roots[k] == cd(0, 0));
  CHECK(std::equal(rq.roots.begin(), rq.roots.end(), rp.roots.begin() + 3));
}

TEST_CASE("newton_power_sums") {
  SUBCASE("1 + 2z") {
    const auto p = newton_power_sums(Polynomial{1, 2}, 1);
    CHECK(std::abs(p[0] - cd(-2, 0)) <= 1e-15);
  }
  SUBCASE("z^n - 1") {
    const std::size_t n = 12;
    std::vector<cd> c(n + 1, 0.0);
    c[0] = -1;
    c[n] = 1;
    const auto p = newton_power_sums(Polynomial::from_values(c), n);
    for (std::size_t l = 0; l + 1 < n; ++l) CHECK(std::abs(p[l]) <= 1e-14);
    CHECK(std::abs(p[n - 1] - cd(double(n), 0)) <= 1e-12);
  }
  SUBCASE("degree-8 Gaussian against solved roots") {
    const Polynomial poly = sampled("gaussian", 8, 8);
    const auto p = newton_power_sums(poly, 5);
    const RootSet rs = solve_roots(poly);
    for (int l = 1; l <= 5; ++l) {
      cd s = 0;
      for (const cd& z : rs.roots) s += std::pow(z, -l);
      CHECK(std::abs(s - p[l - 1]) <= 1e-8 * std::abs(p[l - 1]));
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(newton_power_sums(Polynomial{0, 1, 1}, 1), std::invalid_argument);
    CHECK_THROWS_AS(newton_power_sums(Polynomial{1, 1, 1}, 3), std::invalid_argument);
    CHECK_THROWS_AS(newton_power_sums(Polynomial{1, 1, 1}, 0), std::invalid_argument);
  }
}

TEST_CASE("vieta_modulus_product") {
  CHECK(vieta_modulus_product(Polynomial{-4, 0, 1}) == 4.0);
  CHECK(vieta_modulus_product(Polynomial{6, 1, 1, 1, 1, 3}) == 2.0);
  CHECK_THROWS_AS(vieta_modulus_product(Polynomial{0, 1}), std::invalid_argument);

  const Polynomial p = sampled("complex_gaussian", 30, 30);
  const RootSet rs = solve_roots(p);
  double prod = 1;
  for (const cd& z : rs.roots) prod *= std::abs(z);
  CHECK(std::fabs(prod - vieta_modulus_product(p)) <= 1e-8 * vieta_modulus_product(p));
}

TEST_CASE("smallest_root_lower_bound") {
  CHECK(smallest_root_lower_bound(Polynomial{1, 1}) == 1.0);
  CHECK(smallest_root_lower_bound(Polynomial{1, 0, 10}) == doctest::Approx(0.05));
  const RootSet rs = solve_roots(Polynomial{1, 0, 10});
  CHECK(std::abs(rs.roots[0]) == doctest::Approx(1 / std::sqrt(10.0)));
  CHECK_THROWS_AS(smallest_root_lower_bound(Polynomial{0, 1}), std::invalid_argument);

  int violations = 0;
  for (std::uint64_t t = 0; t < 1000; ++t) {
    const Polynomial p = sampled("gaussian", 50, 50, t);
    const RootSet r = solve_roots(p);
    REQUIRE(r.converged);
    violations += std::abs(r.roots.front()) < smallest_root_lower_bound(p);
  }
  CHECK(violations == 0);
}

TEST_CASE("Newton and Viete identities for degrees up to 200") {
  const char* laws[] = {"complex_gaussian", "gaussian", "rademacher", "uniform", "unit_circle"};
  for (std::uint64_t t = 0; t < 100; ++t) {
    const std::size_t n = 5 + (t * 37) % 196;
    const Polynomial p = sampled(laws[t % 5], n, 200, t);
    CAPTURE(n);
    const RootSet rs = solve_roots(p);
    REQUIRE(rs.converged);
    const auto ps = newton_power_sums(p, 5);
    for (int l = 1; l <= 5; ++l) {
      cd s = 0;
      for (const cd& z : rs.roots) s += std::pow(z, -l);
      CHECK(std::abs(s - ps[l - 1]) / (1 + std::abs(ps[l - 1])) <= 1e-6);
    }
    double log_prod = 0;
    for (double lm : rs.log_moduli) log_prod += lm;
    CHECK(std::fabs(std::expm1(log_prod - log_vieta_modulus_product(p))) <= 1e-6);
  }
}

TEST_CASE("heavy-tailed coefficients beyond double range") {
  const auto heavy = make_distribution("exp_half_cauchy");
  for (std::uint64_t t = 0; t < 40; ++t) {
    const Polynomial p = sample_coefficients(heavy, 200, {17, t}).polynomial();
    CAPTURE(t);
    const RootSet rs = solve_roots(p);
    REQUIRE(rs.converged);
    CHECK(rs.max_residual() <= 1e-12);
    double sum = 0, scale = 0;
    for (double lm : rs.log_moduli) {
      sum += lm;
      scale += std::fabs(lm);
    }
    CHECK(std::fabs(sum - log_vieta_modulus_product(p)) <= 1e-9 * (1 + scale));
    for (std::size_t k = 0; k < rs.size(); ++k) {
      CHECK(std::isfinite(rs.roots[k].real()));
      CHECK(std::isfinite(rs.roots[k].imag()));
    }
  }
}

TEST_CASE("extended kernel matches the double kernel") {
  const Polynomial p = sampled("complex_gaussian", 80, 81);
  const RootSet a = solve_roots(p);
  const RootSet b = solve_roots(p, SolveOptions{1e-12, 500, Precision::extended});
  CHECK(b.extended_precision);
  REQUIRE(b.converged);
  CHECK(matching_distance(a.roots, b.roots) <= 1e-10);
}

TEST_CASE("large degree") {
  const Polynomial p = sampled("complex_gaussian", 3000, 3000);
  const RootSet rs = solve_roots(p);
  REQUIRE(rs.converged);
  CHECK(rs.max_residual() <= 1e-12);
  double log_prod = 0;
  for (double lm : rs.log_moduli) log_prod += lm;
  CHECK(std::fabs(log_prod - log_vieta_modulus_product(p)) <= 1e-8 * 3000);
}
