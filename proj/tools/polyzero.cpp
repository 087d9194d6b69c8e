// polyzero: root solving, zero statistics, real-root counts and the
// experiment harness from the command line.
//
// Data goes to stdout, diagnostics to stderr. Exit 0 on success, 1 when an
// assertion fails (or a solve does not converge), 2 on bad input.

#include <omp.h>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polyzero/acceptance.hpp"
#include "polyzero/distributions.hpp"
#include "polyzero/experiments.hpp"
#include "polyzero/realroots.hpp"
#include "polyzero/roots.hpp"
#include "polyzero/zerostats.hpp"

namespace {

using namespace polyzero;

constexpr int kAssertionFailed = 1;
constexpr int kInputError = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<double> parse_csv_numbers(const std::string& line, const std::string& where) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    const std::string f = trim(field);
    double v = 0;
    const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (f.empty() || ec != std::errc() || ptr != f.data() + f.size() || !std::isfinite(v)) {
      throw InputError(where + ": not a finite number: '" + f + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return in;
}

// One polynomial per non-blank line: re,im pairs in ascending powers.
std::vector<Polynomial> read_coefficient_file(const std::string& path) {
  std::ifstream in = open_input(path);
  std::vector<Polynomial> polys;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (trim(line).empty() || trim(line).front() == '#') continue;
    const std::string where = path + ":" + std::to_string(line_no);
    const std::vector<double> v = parse_csv_numbers(line, where);
    if (v.size() % 2 != 0) throw InputError(where + ": expected re,im pairs");
    std::vector<std::complex<double>> c;
    for (std::size_t k = 0; k < v.size(); k += 2) c.emplace_back(v[k], v[k + 1]);
    Polynomial p = Polynomial::from_values(c);
    if (p.effective_top() < 1) throw InputError(where + ": polynomial has no zeros to find");
    polys.push_back(std::move(p));
  }
  if (polys.empty()) throw InputError(path + ": no polynomials");
  return polys;
}

// The CSV written by `roots`: poly,re,im,residual with a header line.
std::vector<std::vector<std::complex<double>>> read_roots_file(const std::string& path) {
  std::ifstream in = open_input(path);
  std::map<std::size_t, std::vector<std::complex<double>>> groups;
  std::string line;
  std::getline(in, line);
  if (trim(line) != "poly,re,im,residual") throw InputError(path + ": expected header poly,re,im,residual");
  for (std::size_t line_no = 2; std::getline(in, line); ++line_no) {
    if (trim(line).empty()) continue;
    const std::string where = path + ":" + std::to_string(line_no);
    const std::vector<double> v = parse_csv_numbers(line, where);
    if (v.size() != 4 || v[0] < 0 || v[0] != std::floor(v[0])) throw InputError(where + ": expected poly,re,im,residual");
    groups[static_cast<std::size_t>(v[0])].emplace_back(v[1], v[2]);
  }
  std::vector<std::vector<std::complex<double>>> out;
  for (auto& [idx, roots] : groups) out.push_back(std::move(roots));
  if (out.empty()) throw InputError(path + ": no roots");
  return out;
}

std::size_t resolve_workers(std::optional<std::size_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("POLYZERO_WORKERS")) {
    std::size_t v = 0;
    const std::string s = env;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || v == 0) {
      throw InputError("POLYZERO_WORKERS must be a positive integer");
    }
    return v;
  }
  return static_cast<std::size_t>(omp_get_num_procs());
}

CoeffDistribution distribution_from(const std::string& name, const std::vector<double>& params) {
  try {
    return make_distribution(name, params);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

Ray parse_ray(const std::string& s) {
  const auto slash = s.find('/');
  Ray r;
  if (slash == std::string::npos) throw InputError("--ray expects q/den");
  try {
    std::size_t used = 0;
    r.q = std::stoll(s.substr(0, slash), &used);
    if (used != slash) throw std::invalid_argument("q");
    const std::string den = s.substr(slash + 1);
    r.den = std::stoll(den, &used);
    if (used != den.size()) throw std::invalid_argument("den");
  } catch (const std::exception&) {
    throw InputError("--ray expects q/den with integers");
  }
  return r;
}

void validated(const ExperimentConfig& cfg) {
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

// --- roots ---

struct RootsArgs {
  std::string coeffs;
  double tol = 1e-12;
  int max_iter = 500;
};

int cmd_roots(const RootsArgs& a) {
  if (!(a.tol > 0)) throw InputError("--tol must be positive");
  if (a.max_iter < 1) throw InputError("--max-iter must be at least 1");
  const auto polys = read_coefficient_file(a.coeffs);
  int status = 0;
  std::cout << "poly,re,im,residual\n";
  for (std::size_t i = 0; i < polys.size(); ++i) {
    const RootSet rs = solve_roots(polys[i], a.tol, a.max_iter);
    for (std::size_t k = 0; k < rs.size(); ++k) {
      std::cout << i << ',' << format_number(rs.roots[k].real()) << ',' << format_number(rs.roots[k].imag()) << ','
                << format_number(rs.residuals[k]) << '\n';
    }
    if (!rs.converged) {
      std::cerr << "polynomial " << i << ": no convergence after " << rs.iterations
                << " iterations, max residual " << format_number(rs.max_residual()) << '\n';
      status = kAssertionFailed;
    }
  }
  return status;
}

// --- stats ---

struct StatsArgs {
  std::string coeffs;
  std::string roots;
  std::string dist;
  std::vector<double> params;
  std::size_t n = 0;
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  double tol = 1e-12;
  std::vector<double> deltas{0.05, 0.1};
  std::vector<int> weyl{1, 2, 3, 4};
  std::vector<double> rings{0.5, 0.9, 1.1, 1.5};
  std::size_t grid_sectors = 8;
};

nlohmann::ordered_json measure_record(const ExperimentConfig& cfg, const ZeroMeasure& m) {
  nlohmann::ordered_json j;
  const double n = static_cast<double>(m.size());
  j["n"] = m.size();
  nlohmann::ordered_json ann = nlohmann::ordered_json::object();
  for (double d : cfg.deltas) ann[format_number(d)] = static_cast<double>(radial_count(m, 1 - d, 1 + d)) / n;
  j["annulus_fraction"] = ann;
  nlohmann::ordered_json w = nlohmann::ordered_json::object();
  for (int l : cfg.weyl_ls) w[std::to_string(l)] = std::abs(weyl_sum(m, l));
  j["weyl"] = w;
  j["ks"] = ks_uniform_args(m);
  nlohmann::ordered_json counts = nlohmann::ordered_json::array();
  const double two_pi = 2 * std::numbers::pi;
  const auto sectors = static_cast<double>(cfg.grid_sectors);
  for (std::size_t r = 0; r + 1 < cfg.grid_rings.size(); ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t s = 0; s < cfg.grid_sectors; ++s) {
      const double alpha = two_pi * static_cast<double>(s) / sectors;
      const double beta = s + 1 == cfg.grid_sectors ? two_pi : two_pi * static_cast<double>(s + 1) / sectors;
      row.push_back(box_count(m, cfg.grid_rings[r], cfg.grid_rings[r + 1], alpha, beta));
    }
    counts.push_back(row);
  }
  j["box_histogram"] = {{"rings", cfg.grid_rings}, {"sectors", cfg.grid_sectors}, {"counts", counts}};
  return j;
}

int cmd_stats(const StatsArgs& a) {
  const int sources = !a.coeffs.empty() + !a.roots.empty() + !a.dist.empty();
  if (sources != 1) throw InputError("stats needs exactly one of --coeffs, --roots, --dist");
  ExperimentConfig cfg;
  cfg.deltas = a.deltas;
  cfg.weyl_ls = a.weyl;
  cfg.grid_rings = a.rings;
  cfg.grid_sectors = a.grid_sectors;
  cfg.tol = a.tol;
  cfg.master_seed = a.seed;
  validated(cfg);

  int status = 0;
  auto emit_solved = [&](const Polynomial& p, nlohmann::ordered_json head) {
    const RootSet rs = solve_roots(p, SolveOptions{a.tol, 500, Precision::automatic});
    if (!rs.converged) {
      std::cerr << "no convergence, max residual " << format_number(rs.max_residual()) << '\n';
      status = kAssertionFailed;
    }
    head.update(measure_record(cfg, ZeroMeasure(rs)));
    head["converged"] = rs.converged;
    std::cout << head.dump() << '\n';
  };

  if (!a.coeffs.empty()) {
    const auto polys = read_coefficient_file(a.coeffs);
    for (std::size_t i = 0; i < polys.size(); ++i) emit_solved(polys[i], {{"poly", i}});
  } else if (!a.roots.empty()) {
    const auto groups = read_roots_file(a.roots);
    for (std::size_t i = 0; i < groups.size(); ++i) {
      nlohmann::ordered_json j{{"poly", i}};
      j.update(measure_record(cfg, ZeroMeasure::from_roots(groups[i])));
      std::cout << j.dump() << '\n';
    }
  } else {
    if (a.n < 1) throw InputError("--n must be at least 1");
    cfg.dist = distribution_from(a.dist, a.params);
    for (std::size_t t = 0; t < a.trials; ++t) {
      const SeedPath seed = trial_seed(cfg, a.n, t);
      emit_solved(sample_coefficients(cfg.dist, a.n, seed).polynomial(), {{"trial", t}});
    }
  }
  return status;
}

// --- realroots ---

struct RealRootsArgs {
  std::string dist = "gaussian";
  std::vector<double> params;
  std::string odd_dist;
  std::vector<double> odd_params;
  std::string ray;
  std::size_t n = 0;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
};

int cmd_realroots(const RealRootsArgs& a, std::size_t workers) {
  ExperimentConfig cfg;
  cfg.dist = distribution_from(a.dist, a.params);
  if (!a.odd_dist.empty()) cfg.odd_dist = distribution_from(a.odd_dist, a.odd_params);
  if (!a.ray.empty()) cfg.ray = parse_ray(a.ray);
  if (a.n < 1) throw InputError("--n must be at least 1");
  cfg.degrees = {a.n};
  cfg.trials = a.trials;
  cfg.master_seed = a.seed;
  cfg.workers = workers;
  validated(cfg);
  if (!cfg.ray && (!cfg.dist.is_real || (cfg.odd_dist && !cfg.odd_dist->is_real))) {
    throw InputError("complex coefficient law: pass --ray to count on a real projection");
  }
  const auto records = run_trials(cfg, ExperimentKind::realroot);
  std::cout << "n,trial,real_roots,method\n";
  for (const auto& r : records) {
    std::cout << r.n << ',' << r.trial << ',' << *r.real_roots << ','
              << (r.real_method == RealCountMethod::exact_sturm       ? "exact_sturm"
                  : r.real_method == RealCountMethod::inclusion_disks ? "inclusion_disks"
                                                                       : "uncertified")
              << '\n';
    if (r.real_method == RealCountMethod::uncertified) {
      std::cerr << "trial " << r.trial << ": count could not be certified\n";
    }
  }
  return 0;
}

// --- simulate ---

struct SimulateArgs {
  std::string experiment;
  std::string config;
  std::string summary;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::vector<std::size_t> degrees;
};

int cmd_simulate(const SimulateArgs& a, std::size_t workers) {
  ExperimentConfig cfg;
  std::optional<std::string> name;
  if (!a.config.empty()) {
    try {
      std::tie(cfg, name) = load_config(a.config);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }
  if (!a.experiment.empty()) name = a.experiment;
  if (!name) throw InputError("no experiment: pass --experiment or set experiment in the config");
  ExperimentKind kind;
  try {
    kind = parse_experiment_kind(*name);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  if (a.seed) cfg.master_seed = *a.seed;
  if (a.trials) cfg.trials = *a.trials;
  if (!a.degrees.empty()) cfg.degrees = a.degrees;
  cfg.workers = workers;

  ExperimentResult res;
  try {
    res = run_experiment(kind, cfg);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }

  write_records_jsonl(std::cout, res.config, res.records);
  if (a.summary.empty()) {
    std::cout << '\n';
    write_summary_csv(std::cout, res.summary);
  } else {
    std::ofstream out(a.summary);
    if (!out) throw InputError("cannot write " + a.summary);
    write_summary_csv(out, res.summary);
  }
  for (const auto& [key, value] : res.reported) std::cerr << key << " = " << format_number(value) << '\n';
  for (const auto& as : res.assertions) {
    std::cerr << (as.passed ? "PASS  " : "FAIL  ") << as.name << ": " << as.detail << '\n';
  }
  return res.passed() ? 0 : kAssertionFailed;
}

// --- check ---

int cmd_check(std::size_t workers) {
  AcceptanceOptions opts;
  opts.workers = workers;
  const auto results = run_acceptance(opts, std::cout, std::cerr);
  bool ok = true;
  for (const auto& r : results) {
    std::cout << format_verdict(r) << '\n';
    ok = ok && r.passed;
  }
  return ok ? 0 : kAssertionFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zeros of random polynomials: solving, statistics, real-root counts, experiments"};
  app.require_subcommand(1);
  std::optional<std::size_t> workers_flag;
  app.add_option("--workers", workers_flag, "worker threads (default: POLYZERO_WORKERS or all cores)")
      ->check(CLI::Range(1, 4096));

  RootsArgs ra;
  auto* roots = app.add_subcommand("roots", "solve polynomials from a coefficient file");
  roots->add_option("--coeffs", ra.coeffs, "one polynomial per line: re,im pairs, ascending powers")->required();
  roots->add_option("--tol", ra.tol, "relative residual tolerance");
  roots->add_option("--max-iter", ra.max_iter, "iteration cap per cluster");

  StatsArgs sa;
  auto* stats = app.add_subcommand("stats", "zero-measure statistics per polynomial or trial");
  stats->add_option("--coeffs", sa.coeffs, "coefficient file, as for roots");
  stats->add_option("--roots", sa.roots, "roots CSV as written by roots");
  stats->add_option("--dist", sa.dist, "sample coefficients from this law");
  stats->add_option("--params", sa.params, "law parameters")->delimiter(',');
  stats->add_option("--n", sa.n, "degree for --dist");
  stats->add_option("--trials", sa.trials, "trials for --dist");
  stats->add_option("--seed", sa.seed, "master seed for --dist");
  stats->add_option("--tol", sa.tol, "solver tolerance");
  stats->add_option("--deltas", sa.deltas, "annulus half-widths")->delimiter(',');
  stats->add_option("--weyl", sa.weyl, "Weyl sum orders")->delimiter(',');
  stats->add_option("--rings", sa.rings, "ring edges of the box histogram")->delimiter(',');
  stats->add_option("--grid-sectors", sa.grid_sectors, "equal sectors of the box histogram");

  RealRootsArgs rr;
  auto* realroots = app.add_subcommand("realroots", "number of real zeros per trial");
  realroots->add_option("--dist", rr.dist, "coefficient law");
  realroots->add_option("--params", rr.params, "law parameters")->delimiter(',');
  realroots->add_option("--odd-dist", rr.odd_dist, "law of the odd-power coefficients");
  realroots->add_option("--odd-params", rr.odd_params, "parameters of --odd-dist")->delimiter(',');
  realroots->add_option("--ray", rr.ray, "count on Re(c_k exp(2 pi i k q / den)), given as q/den");
  realroots->add_option("--n", rr.n, "degree")->required();
  realroots->add_option("--trials", rr.trials, "number of trials");
  realroots->add_option("--seed", rr.seed, "master seed");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "run a named experiment");
  simulate->add_option("--experiment", sim.experiment, "radial, divergence, angular, realroot or arc");
  simulate->add_option("--config", sim.config, "key = value config file");
  simulate->add_option("--summary", sim.summary, "write the summary CSV here instead of after the records");
  simulate->add_option("--seed", sim.seed, "override the master seed");
  simulate->add_option("--trials", sim.trials, "override the trial count");
  simulate->add_option("--degrees", sim.degrees, "override the degree list")->delimiter(',');

  auto* check = app.add_subcommand("check", "run the acceptance criteria");

  for (auto* sub : {roots, stats, realroots, simulate, check}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return kInputError;
  }

  try {
    const std::size_t workers = resolve_workers(workers_flag);
    if (*roots) return cmd_roots(ra);
    if (*stats) return cmd_stats(sa);
    if (*realroots) return cmd_realroots(rr, workers);
    if (*simulate) return cmd_simulate(sim, workers);
    return cmd_check(workers);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
}
