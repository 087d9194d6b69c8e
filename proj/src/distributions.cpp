#include "polyzero/distributions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace polyzero {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double param_or(const std::vector<double>& p, std::size_t i, double fallback) {
  return i < p.size() ? p[i] : fallback;
}

void expect_params(std::string_view name, const std::vector<double>& p, std::size_t max_count) {
  if (p.size() > max_count) {
    throw std::invalid_argument("distribution '" + std::string(name) + "' takes at most " +
                                std::to_string(max_count) + " parameters");
  }
  for (double v : p) {
    if (!std::isfinite(v)) throw std::invalid_argument("distribution parameters must be finite");
  }
}

}  // namespace

std::mt19937_64 make_engine(const SeedPath& seed, std::uint64_t stream) {
  const std::uint64_t a = splitmix64(seed.master);
  const std::uint64_t b = splitmix64(a ^ splitmix64(seed.trial + 0x632be59bd9b4e019ULL));
  const std::uint64_t c = splitmix64(b ^ splitmix64(stream + 0x8cb92ba72f3d8dd7ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

const std::vector<std::string>& registered_distributions() {
  static const std::vector<std::string> names{"complex_gaussian", "gaussian",        "rademacher", "uniform",
                                              "unit_circle",      "exp_half_cauchy", "point_mass"};
  return names;
}

CoeffDistribution make_distribution(std::string_view name, std::vector<double> params) {
  CoeffDistribution d;
  d.name = std::string(name);
  if (name == "complex_gaussian") {
    expect_params(name, params, 1);
    if (!(param_or(params, 0, 1.0) > 0)) throw std::invalid_argument("complex_gaussian: sigma must be positive");
    d.kind = LawKind::complex_gaussian;
    d.is_real = false;
  } else if (name == "gaussian") {
    expect_params(name, params, 2);
    if (!(param_or(params, 1, 1.0) > 0)) throw std::invalid_argument("gaussian: sd must be positive");
    d.kind = LawKind::gaussian;
  } else if (name == "rademacher") {
    expect_params(name, params, 0);
    d.kind = LawKind::rademacher;
  } else if (name == "uniform") {
    expect_params(name, params, 2);
    if (!(param_or(params, 0, -1.0) < param_or(params, 1, 1.0))) {
      throw std::invalid_argument("uniform: need a < b");
    }
    d.kind = LawKind::uniform;
  } else if (name == "unit_circle") {
    expect_params(name, params, 0);
    d.kind = LawKind::unit_circle;
    d.is_real = false;
  } else if (name == "exp_half_cauchy") {
    expect_params(name, params, 1);
    if (!(param_or(params, 0, 1.0) > 0)) throw std::invalid_argument("exp_half_cauchy: scale must be positive");
    d.kind = LawKind::exp_half_cauchy;
    d.is_real = false;
    d.log_moment_finite = false;
  } else if (name == "point_mass") {
    expect_params(name, params, 2);
    if (params.empty()) throw std::invalid_argument("point_mass: value required");
    if (param_or(params, 0, 0.0) == 0 && param_or(params, 1, 0.0) == 0) {
      throw std::invalid_argument("point_mass: a law concentrated at zero is not allowed");
    }
    d.kind = LawKind::point_mass;
    d.is_real = param_or(params, 1, 0.0) == 0;
  } else {
    throw std::invalid_argument("unknown distribution '" + std::string(name) + "'");
  }
  d.params = std::move(params);
  return d;
}

Coefficient draw(const CoeffDistribution& dist, std::mt19937_64& rng) {
  const auto& p = dist.params;
  switch (dist.kind) {
    case LawKind::complex_gaussian: {
      std::normal_distribution<double> g(0.0, param_or(p, 0, 1.0) / std::numbers::sqrt2);
      const double re = g(rng);
      return std::complex<double>(re, g(rng));
    }
    case LawKind::gaussian: {
      std::normal_distribution<double> g(param_or(p, 0, 0.0), param_or(p, 1, 1.0));
      return g(rng);
    }
    case LawKind::rademacher:
      return (rng() >> 63) ? 1.0 : -1.0;
    case LawKind::uniform: {
      std::uniform_real_distribution<double> u(param_or(p, 0, -1.0), param_or(p, 1, 1.0));
      return u(rng);
    }
    case LawKind::unit_circle: {
      std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
      return std::polar(1.0, u(rng));
    }
    case LawKind::exp_half_cauchy: {
      std::cauchy_distribution<double> c(0.0, 1.0);
      std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
      const double log_abs = param_or(p, 0, 1.0) * std::fabs(c(rng));
      return Coefficient::from_log_polar(log_abs, u(rng));
    }
    case LawKind::point_mass:
      return std::complex<double>(param_or(p, 0, 0.0), param_or(p, 1, 0.0));
  }
  throw std::logic_error("unhandled distribution kind");
}

CoefficientVector sample_coefficients(const CoeffDistribution& dist, std::size_t n, const SeedPath& seed) {
  if (n == 0) throw std::invalid_argument("sample_coefficients: degree must be at least 1");
  auto rng = make_engine(seed);
  CoefficientVector out;
  out.seed = seed;
  out.values.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) out.values.push_back(draw(dist, rng));
  return out;
}

CoefficientVector sample_interleaved(const CoeffDistribution& even, const CoeffDistribution& odd, std::size_t n,
                                     const SeedPath& seed) {
  if (n == 0) throw std::invalid_argument("sample_interleaved: degree must be at least 1");
  auto rng_even = make_engine(seed, 1);
  auto rng_odd = make_engine(seed, 2);
  CoefficientVector out;
  out.seed = seed;
  out.values.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    out.values.push_back(k % 2 == 0 ? draw(even, rng_even) : draw(odd, rng_odd));
  }
  return out;
}

double log1p_abs(const Coefficient& c) {
  if (c.exponent == 0) return std::log1p(std::abs(c.mantissa));
  const double x = c.log_abs();
  return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double estimate_log_moment(const CoeffDistribution& dist, std::size_t samples, const SeedPath& seed) {
  if (samples == 0) throw std::invalid_argument("estimate_log_moment: need at least one sample");
  auto rng = make_engine(seed, 3);
  double sum = 0;
  for (std::size_t i = 0; i < samples; ++i) sum += log1p_abs(draw(dist, rng));
  return sum / static_cast<double>(samples);
}

}  // namespace polyzero
