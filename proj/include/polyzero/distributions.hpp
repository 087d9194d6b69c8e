#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "polyzero/polynomial.hpp"

namespace polyzero {

// Identifies one reproducible random stream: the master seed of a run and
// the index of the trial inside it.
struct SeedPath {
  std::uint64_t master = 0;
  std::uint64_t trial = 0;
};

// Engine for one substream. The (master, trial, stream) triple is mixed
// through SplitMix64 into the engine seed, so a trial's draws never depend
// on which worker runs it or in which order.
std::mt19937_64 make_engine(const SeedPath& seed, std::uint64_t stream = 0);

enum class LawKind {
  complex_gaussian,  // re, im ~ N(0, sigma^2 / 2) independent; params [sigma = 1]
  gaussian,          // N(mean, sd^2), real; params [mean = 0, sd = 1]
  rademacher,        // +1 / -1 with probability 1/2, real; no params
  uniform,           // U[a, b], real; params [a = -1, b = 1]
  unit_circle,       // exp(i U), U ~ U[0, 2 pi); no params
  exp_half_cauchy,   // |xi| = exp(s |C|), C standard Cauchy, phase U[0, 2 pi); params [s = 1]
  point_mass,        // constant re + i im, nonzero; params [re, im = 0]
};

// A registered coefficient law. Construct through make_distribution, which
// enforces that no law puts mass at zero.
struct CoeffDistribution {
  std::string name;
  std::vector<double> params;
  bool is_real = true;
  // Declared regime of E log(1 + |xi|) < infinity.
  bool log_moment_finite = true;
  LawKind kind = LawKind::gaussian;
};

// Throws std::invalid_argument on an unknown name or invalid parameters.
CoeffDistribution make_distribution(std::string_view name, std::vector<double> params = {});

// Names accepted by make_distribution.
const std::vector<std::string>& registered_distributions();

Coefficient draw(const CoeffDistribution& dist, std::mt19937_64& rng);

struct CoefficientVector {
  std::vector<Coefficient> values;
  SeedPath seed;

  Polynomial polynomial() const { return Polynomial(values); }
};

// n + 1 i.i.d. draws for a degree-n polynomial. Throws for n == 0.
CoefficientVector sample_coefficients(const CoeffDistribution& dist, std::size_t n, const SeedPath& seed);

// Coefficients alternating between two laws: even powers from `even`, odd
// powers from `odd`. Each law draws from its own substream.
CoefficientVector sample_interleaved(const CoeffDistribution& even, const CoeffDistribution& odd, std::size_t n,
                                     const SeedPath& seed);

// (1/N) sum log(1 + |xi_i|) over N fresh draws.
double estimate_log_moment(const CoeffDistribution& dist, std::size_t samples, const SeedPath& seed);

// log(1 + |c|), stable for magnitudes beyond double range.
double log1p_abs(const Coefficient& c);

}  // namespace polyzero
