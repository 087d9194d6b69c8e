#include "polyzero/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "polyzero/distributions.hpp"
#include "polyzero/experiments.hpp"
#include "polyzero/realroots.hpp"
#include "polyzero/roots.hpp"
#include "polyzero/zerostats.hpp"

namespace polyzero {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kSeedBase = 1000;

std::uint64_t seed_for(int criterion) { return kSeedBase + static_cast<std::uint64_t>(criterion); }

struct Context {
  std::size_t workers = 1;
  std::ostream* data = nullptr;
  std::ostream& out() { return *data; }
};

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string num(double x) { return format_number(x); }

void report_assertions(Context& ctx, int id, const ExperimentResult& res, Outcome& o) {
  for (const auto& a : res.assertions) {
    ctx.out() << 'c' << id << " assertion \"" << a.name << "\" " << (a.passed ? "holds" : "fails") << " [" << a.detail
              << "]\n";
    o.require(a.passed, a.name);
  }
}

void report_field(Context& ctx, int id, const std::string& label, const ExperimentResult& res,
                  const std::string& field) {
  for (const auto& d : res.summary) {
    const auto& f = d.at(field);
    ctx.out() << 'c' << id << ' ' << label << " n=" << d.n << ' ' << field << " mean=" << num(f.mean)
              << " se=" << num(f.std_error) << " min=" << num(f.min) << " max=" << num(f.max) << '\n';
  }
}

ExperimentConfig base_config(Context& ctx, int id, std::string_view dist, std::vector<double> params = {}) {
  ExperimentConfig cfg;
  cfg.dist = make_distribution(dist, std::move(params));
  cfg.master_seed = seed_for(id);
  cfg.workers = ctx.workers;
  return cfg;
}

// 1. Newton power sums, Viete product and the smallest-root bound.
Outcome criterion_oracles(Context& ctx) {
  const std::vector<CoeffDistribution> laws{make_distribution("complex_gaussian"), make_distribution("gaussian"),
                                            make_distribution("rademacher"), make_distribution("uniform"),
                                            make_distribution("unit_circle")};
  auto rng = make_engine({seed_for(1), 0}, 99);
  std::uniform_int_distribution<std::size_t> degree(1, 200);
  double worst_newton = 0, worst_vieta = 0;
  std::size_t violations = 0, unconverged = 0;
  for (std::size_t i = 0; i < 1000; ++i) {
    const std::size_t n = degree(rng);
    const Polynomial p = sample_coefficients(laws[i % laws.size()], n, {seed_for(1), i}).polynomial();
    const RootSet rs = solve_roots(p);
    unconverged += !rs.converged;
    const std::size_t L = std::min<std::size_t>(5, n);
    const auto sums = newton_power_sums(p, L);
    for (std::size_t l = 1; l <= L; ++l) {
      std::complex<double> direct = 0;
      for (const auto& z : rs.roots) direct += std::pow(1.0 / z, static_cast<int>(l));
      worst_newton = std::max(worst_newton, std::abs(direct - sums[l - 1]) / (1 + std::abs(sums[l - 1])));
    }
    double log_prod = 0;
    for (double lm : rs.log_moduli) log_prod += lm;
    worst_vieta = std::max(worst_vieta, std::fabs(std::expm1(log_prod - log_vieta_modulus_product(p))));
    violations += std::exp(rs.log_moduli.front()) < smallest_root_lower_bound(p);
  }
  ctx.out() << "c1 polynomials=1000 max_newton_rel_error=" << num(worst_newton)
            << " max_vieta_rel_error=" << num(worst_vieta) << " lower_bound_violations=" << violations
            << " unconverged=" << unconverged << '\n';
  Outcome o;
  o.require(worst_newton <= 1e-6, "Newton power sums off by " + num(worst_newton));
  o.require(worst_vieta <= 1e-6, "Viete product off by " + num(worst_vieta));
  o.require(violations == 0, std::to_string(violations) + " lower-bound violations");
  if (o.passed) o.detail = "newton " + num(worst_newton) + ", viete " + num(worst_vieta) + ", bound holds";
  return o;
}

// 2. Budan-Fourier bound against exact Sturm counts.
Outcome criterion_budan_fourier(Context& ctx) {
  const auto law = make_distribution("gaussian");
  auto rng = make_engine({seed_for(2), 0}, 99);
  std::uniform_int_distribution<std::size_t> degree(1, 30);
  std::uniform_real_distribution<double> point(-3.0, 3.0);
  std::size_t failures = 0, strict = 0, total_bound = 0, total_roots = 0;
  for (std::size_t i = 0; i < 1000; ++i) {
    const RealPoly p = real_coefficients(sample_coefficients(law, degree(rng), {seed_for(2), i}).polynomial());
    for (;;) {
      double a = point(rng), b = point(rng);
      if (a > b) std::swap(a, b);
      if (a == b) continue;
      std::size_t bound = 0, count = 0;
      try {
        bound = budan_fourier_bound(p, a, b, Arithmetic::exact);
        count = sturm_count(p, a, b, Arithmetic::exact).count;
      } catch (const std::invalid_argument&) {
        continue;  // an endpoint hit a root exactly; draw another interval
      }
      failures += bound < count || (bound - count) % 2 != 0;
      strict += bound > count;
      total_bound += bound;
      total_roots += count;
      break;
    }
  }
  ctx.out() << "c2 polynomials=1000 failures=" << failures << " bound_exceeds_count=" << strict
            << " sum_bound=" << total_bound << " sum_roots=" << total_roots << '\n';
  Outcome o;
  o.require(failures == 0, std::to_string(failures) + " intervals violate the bound or parity");
  if (o.passed) o.detail = "0 failures, bound strict in " + std::to_string(strict) + " of 1000";
  return o;
}

// 3. Concentration near the unit circle for a finite log-moment law.
Outcome criterion_radial(Context& ctx) {
  ExperimentConfig cfg = base_config(ctx, 3, "gaussian");
  cfg.degrees = {125, 250, 500, 1000};
  cfg.trials = 100;
  cfg.deltas = {0.1};
  const auto res = run_radial_experiment(cfg);
  Outcome o;
  report_field(ctx, 3, "gaussian", res, "annulus_0.1");
  report_assertions(ctx, 3, res, o);
  const double at500 = res.degree(500).at("annulus_0.1").mean;
  o.require(at500 >= 0.90, "mean annulus fraction at n=500 is " + num(at500));
  if (o.passed) o.detail = "mean fraction at n=500 " + num(at500) + ", trend holds";
  return o;
}

// 4. Heavy tails break the concentration.
Outcome criterion_divergence(Context& ctx) {
  ExperimentConfig cfg = base_config(ctx, 4, "exp_half_cauchy");
  cfg.degrees = {200};
  cfg.trials = 100;
  cfg.deltas = {0.1, 0.5};
  cfg.epsilon = 0.5;
  const auto res = run_divergence_experiment(cfg);
  Outcome o;
  report_field(ctx, 4, "exp_half_cauchy", res, "annulus_0.1");
  report_field(ctx, 4, "exp_half_cauchy", res, "inner_fraction");
  for (const auto& [name, value] : res.reported) ctx.out() << "c4 " << name << '=' << num(value) << '\n';
  report_assertions(ctx, 4, res, o);
  const double most_inside = res.degree(200).at("inner_fraction").max;
  const double mean_annulus = res.degree(200).at("annulus_0.1").mean;
  o.require(most_inside >= 0.3, "largest share of roots inside |z| <= 0.5 is " + num(most_inside));
  o.require(mean_annulus <= 0.9, "mean annulus fraction " + num(mean_annulus));
  if (o.passed) {
    o.detail = "max inner share " + num(most_inside) + ", mean annulus fraction " + num(mean_annulus);
  }
  return o;
}

// 5. Arguments equidistribute with and without the moment condition.
Outcome criterion_angular(Context& ctx) {
  Outcome o;
  ExperimentConfig cfg = base_config(ctx, 5, "gaussian");
  cfg.degrees = {125, 250, 500, 1000};
  cfg.trials = 100;
  cfg.weyl_ls = {1, 2, 3, 4};
  const auto res = run_angular_experiment(cfg);
  report_field(ctx, 5, "gaussian", res, "ks");
  report_assertions(ctx, 5, res, o);

  ExperimentConfig heavy = base_config(ctx, 5, "exp_half_cauchy");
  heavy.degrees = {500};
  heavy.trials = 100;
  heavy.weyl_ls = {1, 2, 3, 4};
  const auto hres = run_angular_experiment(heavy);
  report_field(ctx, 5, "exp_half_cauchy", hres, "ks");
  report_assertions(ctx, 5, hres, o);

  const double ks1000 = res.degree(1000).at("ks").mean;
  const double ks_heavy = hres.degree(500).at("ks").mean;
  o.require(ks1000 <= 0.05, "mean KS at n=1000 is " + num(ks1000));
  o.require(ks_heavy <= 0.1, "heavy-tailed mean KS at n=500 is " + num(ks_heavy));
  for (const auto* r : {&res, &hres}) {
    const std::string label = r == &res ? "gaussian" : "exp_half_cauchy";
    for (const auto& d : r->summary) {
      const double limit = 5.0 / std::sqrt(static_cast<double>(d.n));
      for (int l = 1; l <= 4; ++l) {
        const double w = d.at("weyl_" + std::to_string(l)).mean;
        ctx.out() << "c5 " << label << " n=" << d.n << " weyl_" << l << " mean=" << num(w) << " limit=" << num(limit)
                  << '\n';
        o.require(w <= limit, label + " |weyl_" + std::to_string(l) + "| at n=" + std::to_string(d.n) + " is " + num(w));
      }
    }
  }
  if (o.passed) o.detail = "KS " + num(ks1000) + " (gaussian, n=1000), " + num(ks_heavy) + " (heavy, n=500)";
  return o;
}

// 6. Annular-sector boxes against the arc-length measure.
Outcome criterion_arc(Context& ctx) {
  ExperimentConfig cfg = base_config(ctx, 6, "gaussian");
  cfg.degrees = {125, 250, 500, 1000};
  cfg.trials = 100;
  cfg.grid_rings = {0.5, 0.9, 1.1, 1.5};
  cfg.grid_sectors = 8;
  const auto res = run_arc_measure_experiment(cfg);
  Outcome o;
  report_field(ctx, 6, "gaussian", res, "box_discrepancy");
  report_assertions(ctx, 6, res, o);
  const double at1000 = res.degree(1000).at("box_discrepancy").mean;
  o.require(at1000 <= 0.05, "mean grid discrepancy at n=1000 is " + num(at1000));
  if (o.passed) o.detail = "mean grid discrepancy at n=1000 " + num(at1000);
  return o;
}

// 7. Few real roots.
Outcome criterion_real_roots(Context& ctx) {
  Outcome o;
  ExperimentConfig cfg = base_config(ctx, 7, "gaussian");
  cfg.degrees = {100, 400, 1600};
  cfg.trials = 200;
  const auto res = run_realroot_experiment(cfg);
  report_field(ctx, 7, "gaussian", res, "real_roots");
  for (const auto& [name, value] : res.reported) ctx.out() << "c7 gaussian " << name << '=' << num(value) << '\n';
  report_assertions(ctx, 7, res, o);

  ExperimentConfig mixed = base_config(ctx, 7, "gaussian");
  mixed.odd_dist = make_distribution("rademacher");
  mixed.degrees = {1600};
  mixed.trials = 200;
  const auto mres = run_realroot_experiment(mixed);
  report_field(ctx, 7, "gaussian_even_rademacher_odd", mres, "real_roots");
  report_assertions(ctx, 7, mres, o);

  double previous = 1;
  for (const auto& d : res.summary) {
    const double mean = d.at("real_roots").mean;
    const double per_n = mean / static_cast<double>(d.n);
    const double per_log = mean / std::log(static_cast<double>(d.n));
    ctx.out() << "c7 gaussian n=" << d.n << " mean_over_n=" << num(per_n) << " mean_over_log_n=" << num(per_log)
              << '\n';
    o.require(per_n < previous, "mean M_n/n not decreasing at n=" + std::to_string(d.n));
    o.require(per_log >= 0.5 && per_log <= 0.8,
              "mean M_n/ln n at n=" + std::to_string(d.n) + " is " + num(per_log) + ", outside [0.5, 0.8]");
    previous = per_n;
  }
  const double g1600 = res.degree(1600).at("real_roots").mean / 1600.0;
  const double m1600 = mres.degree(1600).at("real_roots").mean / 1600.0;
  ctx.out() << "c7 gaussian_even_rademacher_odd n=1600 mean_over_n=" << num(m1600) << '\n';
  o.require(g1600 <= 0.05, "gaussian mean M_n/n at n=1600 is " + num(g1600));
  o.require(m1600 <= 0.05, "interleaved mean M_n/n at n=1600 is " + num(m1600));
  if (o.passed) o.detail = "M_1600/1600 " + num(g1600) + " (gaussian), " + num(m1600) + " (interleaved)";
  return o;
}

// 8. Deterministic fixtures with exact answers.
Outcome criterion_fixtures(Context& ctx) {
  Outcome o;
  ExperimentConfig cfg = base_config(ctx, 8, "point_mass", {1.0});
  cfg.degrees = {10, 101, 1000};
  cfg.trials = 1;
  cfg.deltas = {0.1};
  cfg.sectors = {{0, kPi}, {kPi, 2 * kPi}};
  cfg.grid_rings = {0.5, 0.9, 1.1, 1.5};
  cfg.grid_sectors = 8;

  const auto radial = run_radial_experiment(cfg);
  report_assertions(ctx, 8, radial, o);
  const auto angular = run_angular_experiment(cfg);
  const auto arc = run_arc_measure_experiment(cfg);
  for (const auto& r : radial.records) {
    ctx.out() << "c8 all_ones n=" << r.n << " annulus_0.1=" << num(r.annulus[0]) << '\n';
    o.require(r.annulus[0] == 1.0, "all-ones annulus fraction " + num(r.annulus[0]) + " at n=" + std::to_string(r.n));
  }
  for (const auto& r : angular.records) {
    const double n = static_cast<double>(r.n);
    for (std::size_t i = 0; i < r.sector_props.size(); ++i) {
      const double expected = (cfg.sectors[i].second - cfg.sectors[i].first) / (2 * kPi);
      ctx.out() << "c8 all_ones n=" << r.n << " sector_" << i << '=' << num(r.sector_props[i]) << '\n';
      o.require(std::fabs(r.sector_props[i] - expected) <= 1 / n,
                "sector " + std::to_string(i) + " off by more than 1/n at n=" + std::to_string(r.n));
    }
  }
  for (const auto& r : arc.records) {
    // Roots of unity place at most one extra or one missing root per box.
    const double limit = 2.0 / static_cast<double>(r.n);
    ctx.out() << "c8 all_ones n=" << r.n << " box_discrepancy=" << num(r.box_discrepancy) << '\n';
    o.require(r.box_discrepancy <= limit, "grid discrepancy " + num(r.box_discrepancy) + " > 2/n");
  }
  double worst = 0;
  for (std::size_t n : {8, 64, 500}) {
    std::vector<std::complex<double>> c(n + 1);
    c[0] = -1;
    c[n] = 1;
    const ZeroMeasure m(solve_roots(Polynomial::from_values(c)));
    for (int l = 1; l <= static_cast<int>(2 * n); ++l) {
      if (l % static_cast<int>(n) == 0) continue;
      worst = std::max(worst, std::abs(weyl_sum(m, l)));
    }
  }
  ctx.out() << "c8 roots_of_unity max_weyl=" << num(worst) << '\n';
  o.require(worst <= 1e-12, "weyl sum of z^n - 1 roots reaches " + num(worst));
  if (o.passed) o.detail = "all-ones fixtures exact, max weyl " + num(worst);
  return o;
}

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<Outcome(Context&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "oracle identities", 60, criterion_oracles},
      {2, "Budan-Fourier vs Sturm", 30, criterion_budan_fourier},
      {3, "radial concentration trend", 300, criterion_radial},
      {4, "heavy-tail divergence", 120, criterion_divergence},
      {5, "argument equidistribution", 300, criterion_angular},
      {6, "arc-measure grid", 120, criterion_arc},
      {7, "real roots", 180, criterion_real_roots},
      {8, "exact fixtures", 10, criterion_fixtures},
  };
  return all;
}

std::vector<CriterionResult> run_pass(std::size_t workers, std::ostream& data, std::ostream& diag) {
  std::vector<CriterionResult> out;
  Context ctx{workers, &data};
  for (const auto& c : criteria()) {
    CriterionResult r;
    r.id = c.id;
    r.title = c.title;
    r.limit_seconds = c.limit_seconds;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run(ctx);
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("error: ") + e.what();
      data << 'c' << c.id << " error " << e.what() << '\n';
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.passed = o.passed;
    r.detail = o.detail;
    if (r.seconds > r.limit_seconds) {
      r.passed = false;
      r.detail += (r.detail.empty() ? "" : "; ") + std::string("over the time limit");
    }
    diag << "criterion " << c.id << " (" << workers << " workers): " << r.seconds << " s of " << r.limit_seconds
         << " s allowed\n";
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::ostream& data, std::ostream& diag) {
  const std::size_t workers = opts.workers > 0 ? opts.workers : 1;
  std::ostringstream first;
  auto results = run_pass(workers, first, diag);
  data << first.str();
  if (!opts.check_determinism) return results;

  const std::size_t other = workers == 8 ? 1 : 8;
  CriterionResult det;
  det.id = 9;
  det.title = "determinism across worker counts";
  const auto start = std::chrono::steady_clock::now();
  std::ostringstream second;
  run_pass(other, second, diag);
  det.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool identical = first.str() == second.str();
  det.passed = identical;
  det.detail = identical ? "data output identical with " + std::to_string(workers) + " and " +
                               std::to_string(other) + " workers"
                         : "data output differs between " + std::to_string(workers) + " and " +
                               std::to_string(other) + " workers";
  diag << "criterion 9: " << det.seconds << " s\n";
  results.push_back(std::move(det));
  return results;
}

std::string format_verdict(const CriterionResult& r) {
  return std::string(r.passed ? "PASS" : "FAIL") + "  criterion " + std::to_string(r.id) + "  " + r.title + ": " +
         r.detail;
}

}  // namespace polyzero
