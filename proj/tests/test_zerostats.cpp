#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "polyzero/distributions.hpp"
#include "polyzero/roots.hpp"
#include "polyzero/zerostats.hpp"

using namespace polyzero;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

RootSet unity_roots(std::size_t n) {
  std::vector<cd> c(n + 1, 0.0);
  c[0] = -1;
  c[n] = 1;
  return solve_roots(Polynomial::from_values(c));
}

RootSet gaussian_roots(std::size_t n, std::uint64_t seed) {
  return solve_roots(sample_coefficients(make_distribution("complex_gaussian"), n, {seed, 0}).polynomial());
}

}  // namespace

TEST_CASE("measure layout") {
  const ZeroMeasure m(gaussian_roots(120, 1));
  REQUIRE(m.size() == 120);
  REQUIRE(m.args().size() == 120);
  for (std::size_t k = 0; k < m.size(); ++k) {
    CHECK(m.args()[k] >= 0);
    CHECK(m.args()[k] < 2 * kPi);
    if (k) CHECK(m.moduli()[k - 1] <= m.moduli()[k]);
  }
}

TEST_CASE("radial_count") {
  const ZeroMeasure m(unity_roots(4));
  CHECK(radial_count(m, 0.9, 1.1) == 4);
  CHECK(radial_count(m, 1.0, 1.1) == 4);
  CHECK(radial_count(m, 0.5, 1.0) == 4);
  CHECK(radial_count(m, 1.01, kInf) == 0);
  CHECK_THROWS_AS(radial_count(m, 1.1, 0.9), std::invalid_argument);
  CHECK_THROWS_AS(radial_count(m, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(radial_count(m, -1.0, 1.0), std::invalid_argument);

  const RootSet rs = gaussian_roots(100, 2);
  const ZeroMeasure g(rs);
  std::size_t tally = 0;
  for (const cd& z : rs.roots) tally += std::abs(z) >= 0.8 && std::abs(z) <= 1.2;
  CHECK(radial_count(g, 0.8, 1.2) == tally);
  CHECK(radial_count(g, 0, kInf) == 100);
}

TEST_CASE("sector_count") {
  const ZeroMeasure m(unity_roots(4));
  CHECK(sector_count(m, 0, kPi) == 2);
  CHECK(sector_count(m, 0, 2 * kPi) == 4);
  CHECK_THROWS_AS(sector_count(m, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(sector_count(m, 0, 7.0), std::invalid_argument);

  const RootSet rs = gaussian_roots(50, 3);
  const ZeroMeasure g(rs);
  std::size_t tally = 0;
  for (const cd& z : rs.roots) {
    const double a = principal_arg(z);
    tally += a >= kPi / 3 && a < kPi / 2;
  }
  CHECK(sector_count(g, kPi / 3, kPi / 2) == tally);

  // A partition of [0, 2 pi) counts every zero once.
  const double cuts[] = {0, 0.3, 1.0, kPi, 4.0, 5.5, 2 * kPi};
  std::size_t sum = 0;
  for (int i = 0; i < 6; ++i) sum += sector_count(g, cuts[i], cuts[i + 1]);
  CHECK(sum == 50);
}

TEST_CASE("box_count and arc_measure") {
  CHECK(arc_measure(0, kPi, 0.5, 1.5) == 0.5);
  CHECK(arc_measure(0, kPi, 1.5, 2.0) == 0.0);
  CHECK(arc_measure(0, 2 * kPi, 1.0, 2.0) == 1.0);

  const ZeroMeasure m(unity_roots(8));
  CHECK(box_count(m, 0.9, 1.1, 0, kPi) == 4);
  CHECK(static_cast<double>(box_count(m, 0.9, 1.1, 0, kPi)) / 8 == arc_measure(0, kPi, 0.9, 1.1));
  CHECK_THROWS(box_count(m, 1.1, 0.9, 0, kPi));
  CHECK_THROWS(box_count(m, 0.9, 1.1, kPi, 0));

  const ZeroMeasure g(gaussian_roots(300, 4));
  const double rings[] = {0.5, 0.8, 0.95, 1.05, 1.2, 1.5};
  std::size_t sum = 0;
  for (int r = 0; r < 5; ++r) {
    for (int s = 0; s < 7; ++s) {
      sum += box_count(g, rings[r], rings[r + 1], 2 * kPi * s / 7, s == 6 ? 2 * kPi : 2 * kPi * (s + 1) / 7);
    }
  }
  CHECK(sum == radial_count(g, 0.5, 1.5));
}

TEST_CASE("weyl_sum") {
  for (std::size_t n : {5, 16, 101}) {
    const ZeroMeasure m(unity_roots(n));
    CHECK(std::abs(weyl_sum(m, 1)) <= 1e-12);
    CHECK(std::abs(weyl_sum(m, static_cast<int>(n)) - cd(1, 0)) <= 1e-12);
  }
  const std::vector<cd> ones(7, cd(1, 0));
  const ZeroMeasure m = ZeroMeasure::from_roots(ones);
  for (int l = 1; l <= 5; ++l) CHECK(std::abs(weyl_sum(m, l) - cd(1, 0)) <= 1e-15);
  CHECK_THROWS_AS(weyl_sum(m, 0), std::invalid_argument);

  // Equal arguments, different moduli: still 1; otherwise strictly below.
  const std::vector<cd> ray{std::polar(0.5, 2.0), std::polar(3.0, 2.0)};
  CHECK(std::abs(weyl_sum(ZeroMeasure::from_roots(ray), 3)) == doctest::Approx(1.0).epsilon(1e-12));
  const std::vector<cd> two{std::polar(1.0, 2.0), std::polar(1.0, 2.5)};
  CHECK(std::abs(weyl_sum(ZeroMeasure::from_roots(two), 1)) < 1 - 1e-12);

  const ZeroMeasure g(gaussian_roots(500, 5));
  for (int l = 1; l <= 4; ++l) {
    const double w = std::abs(weyl_sum(g, l));
    CHECK(w <= 1);
    CHECK(w <= 5 / std::sqrt(500.0));
  }
}

TEST_CASE("ks_uniform_args") {
  for (std::size_t n : {4, 9, 64}) {
    CHECK(ks_uniform_args(ZeroMeasure(unity_roots(n))) <= 1.0 / static_cast<double>(n) + 1e-15);
  }
  // Order-statistic formula with u_(i) = 0: the i = n term gives 1.
  const std::vector<cd> ones(4, cd(1, 0));
  CHECK(ks_uniform_args(ZeroMeasure::from_roots(ones)) == 1.0);
  const std::vector<cd> one{cd(0, 1)};
  CHECK(ks_uniform_args(ZeroMeasure::from_roots(one)) == doctest::Approx(0.75));

  CHECK(ks_uniform_args(ZeroMeasure(gaussian_roots(1000, 6))) <= 0.08);
}
