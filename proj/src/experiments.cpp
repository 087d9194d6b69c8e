#include "polyzero/experiments.hpp"

#include <omp.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "polyzero/roots.hpp"
#include "polyzero/zerostats.hpp"

namespace polyzero {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMaxFailureRate = 0.01;

std::vector<std::pair<double, double>> default_sectors() {
  const double q = std::numbers::pi / 2;
  return {{0, q}, {q, 2 * q}, {2 * q, 3 * q}, {3 * q, kTwoPi}};
}

const std::vector<std::pair<double, double>>& sectors_of(const ExperimentConfig& cfg,
                                                         std::vector<std::pair<double, double>>& storage) {
  if (!cfg.sectors.empty()) return cfg.sectors;
  storage = default_sectors();
  return storage;
}

double grid_discrepancy(const ExperimentConfig& cfg, const ZeroMeasure& m) {
  const double n = static_cast<double>(m.size());
  double worst = 0;
  for (std::size_t r = 0; r + 1 < cfg.grid_rings.size(); ++r) {
    for (std::size_t s = 0; s < cfg.grid_sectors; ++s) {
      const double alpha = kTwoPi * static_cast<double>(s) / static_cast<double>(cfg.grid_sectors);
      const double beta =
          s + 1 == cfg.grid_sectors ? kTwoPi : kTwoPi * static_cast<double>(s + 1) / static_cast<double>(cfg.grid_sectors);
      const double lo = cfg.grid_rings[r], hi = cfg.grid_rings[r + 1];
      const double observed = static_cast<double>(box_count(m, lo, hi, alpha, beta)) / n;
      worst = std::max(worst, std::fabs(observed - arc_measure(alpha, beta, lo, hi)));
    }
  }
  return worst;
}

CoefficientVector draw_coefficients(const ExperimentConfig& cfg, std::size_t n, const SeedPath& seed) {
  if (cfg.odd_dist) return sample_interleaved(cfg.dist, *cfg.odd_dist, n, seed);
  return sample_coefficients(cfg.dist, n, seed);
}

double quantile(const std::vector<double>& sorted, double q) {
  if (sorted.size() == 1) return sorted[0];
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::string field_name(std::string_view prefix, double x) { return std::string(prefix) + format_number(x); }

// --- assertions -------------------------------------------------------------

Assertion convergence_assertion(const std::vector<TrialRecord>& records) {
  std::size_t failed = 0;
  for (const auto& r : records) failed += !r.converged;
  const double rate = records.empty() ? 0.0 : static_cast<double>(failed) / static_cast<double>(records.size());
  return {"solver failure rate <= 1%", rate <= kMaxFailureRate,
          std::to_string(failed) + " of " + std::to_string(records.size()) + " trials failed"};
}

// mean(n_{k+1}) >= mean(n_k) - 2 SE of the difference, for every step.
Assertion non_decreasing_within_2se(const std::vector<DegreeSummary>& s, const std::string& field) {
  Assertion a{"mean " + field + " non-decreasing in n within 2 SE", true, ""};
  for (std::size_t k = 0; k < s.size(); ++k) {
    a.detail += (k ? " " : "") + format_number(s[k].at(field).mean);
    if (k == 0) continue;
    const auto& x = s[k - 1].at(field);
    const auto& y = s[k].at(field);
    if (y.mean < x.mean - 2 * std::hypot(x.std_error, y.std_error)) a.passed = false;
  }
  return a;
}

Assertion non_increasing_within_2se(const std::vector<DegreeSummary>& s, const std::string& field) {
  Assertion a{"mean " + field + " non-increasing in n within 2 SE", true, ""};
  for (std::size_t k = 0; k < s.size(); ++k) {
    a.detail += (k ? " " : "") + format_number(s[k].at(field).mean);
    if (k == 0) continue;
    const auto& x = s[k - 1].at(field);
    const auto& y = s[k].at(field);
    if (y.mean > x.mean + 2 * std::hypot(x.std_error, y.std_error)) a.passed = false;
  }
  return a;
}

Assertion strictly_decreasing(const std::vector<DegreeSummary>& s, const std::string& field) {
  Assertion a{"mean " + field + " decreasing in n", true, ""};
  for (std::size_t k = 0; k < s.size(); ++k) {
    a.detail += (k ? " " : "") + format_number(s[k].at(field).mean);
    if (k > 0 && !(s[k].at(field).mean < s[k - 1].at(field).mean)) a.passed = false;
  }
  return a;
}

ExperimentResult collect(ExperimentKind kind, const ExperimentConfig& cfg) {
  ExperimentResult res;
  res.kind = kind;
  res.config = cfg;
  res.records = run_trials(cfg, kind);
  res.summary = summarize_records(cfg, res.records);
  return res;
}

// --- config parsing -----------------------------------------------------------

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Length of the JSON value at the start of s, ending at a top-level comma.
std::size_t value_extent(std::string_view s) {
  int depth = 0;
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (quoted) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        quoted = false;
      }
      continue;
    }
    if (c == '"') quoted = true;
    if (c == '[' || c == '{') ++depth;
    if (c == ']' || c == '}') --depth;
    if (c == ',' && depth == 0) return i;
    if (c == '#' && depth == 0) return i;
  }
  return s.size();
}

std::vector<double> as_reals(const nlohmann::json& v, const std::string& key) {
  if (!v.is_array()) throw std::invalid_argument(key + ": expected a list");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw std::invalid_argument(key + ": expected numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::uint64_t as_count(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw std::invalid_argument(key + ": expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

}  // namespace

ExperimentKind parse_experiment_kind(std::string_view name) {
  if (name == "radial") return ExperimentKind::radial;
  if (name == "divergence") return ExperimentKind::divergence;
  if (name == "angular") return ExperimentKind::angular;
  if (name == "realroot" || name == "realroots") return ExperimentKind::realroot;
  if (name == "arc" || name == "arc_measure") return ExperimentKind::arc;
  throw std::invalid_argument("unknown experiment '" + std::string(name) + "'");
}

std::string_view experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::radial:
      return "radial";
    case ExperimentKind::divergence:
      return "divergence";
    case ExperimentKind::angular:
      return "angular";
    case ExperimentKind::realroot:
      return "realroot";
    case ExperimentKind::arc:
      return "arc";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  if (degrees.empty()) throw std::invalid_argument("degrees must be non-empty");
  if (degrees.front() < 1) throw std::invalid_argument("degrees must be at least 1");
  for (std::size_t k = 1; k < degrees.size(); ++k) {
    if (degrees[k] <= degrees[k - 1]) throw std::invalid_argument("degrees must be strictly increasing");
  }
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  for (double d : deltas) {
    if (!(d > 0 && d < 1)) throw std::invalid_argument("every delta must lie in (0, 1)");
  }
  for (const auto& [a, b] : sectors) {
    if (!(a >= 0 && a < b && b <= kTwoPi)) throw std::invalid_argument("sectors need 0 <= alpha < beta <= 2 pi");
  }
  for (int l : weyl_ls) {
    if (l < 1) throw std::invalid_argument("weyl_ls entries must be at least 1");
  }
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  if (grid_rings.size() < 2) throw std::invalid_argument("grid_rings needs at least two edges");
  if (grid_rings.front() < 0) throw std::invalid_argument("grid_rings must be non-negative");
  for (std::size_t k = 1; k < grid_rings.size(); ++k) {
    if (!(grid_rings[k] > grid_rings[k - 1])) throw std::invalid_argument("grid_rings must be increasing");
  }
  if (grid_sectors < 1) throw std::invalid_argument("grid_sectors must be at least 1");
  if (!(tol > 0)) throw std::invalid_argument("tol must be positive");
  if (ray && (ray->den <= 0 || ray->q < 0 || ray->q >= ray->den)) {
    throw std::invalid_argument("ray needs 0 <= q < den");
  }
}

std::pair<ExperimentConfig, std::optional<std::string>> parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::optional<std::string> experiment;
  std::string dist_name = cfg.dist.name;
  std::vector<double> dist_params;
  std::optional<std::string> odd_name;
  std::vector<double> odd_params;

  std::size_t line_no = 0;
  std::istringstream lines{std::string(text)};
  std::string raw;
  while (std::getline(lines, raw)) {
    ++line_no;
    std::string_view rest = trim(raw);
    while (!rest.empty() && rest.front() != '#') {
      const auto eq = rest.find('=');
      if (eq == std::string_view::npos) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": expected key = value");
      }
      const std::string key(trim(rest.substr(0, eq)));
      rest = trim(rest.substr(eq + 1));
      const std::size_t len = value_extent(rest);
      const std::string_view value_text = trim(rest.substr(0, len));
      rest = len < rest.size() && rest[len] == ',' ? trim(rest.substr(len + 1)) : std::string_view{};
      nlohmann::json v;
      try {
        v = nlohmann::json::parse(value_text);
      } catch (const nlohmann::json::exception&) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": cannot parse value of '" + key + "'");
      }
      const std::string where = "line " + std::to_string(line_no) + ": " + key;
      if (key == "experiment") {
        if (!v.is_string()) throw std::invalid_argument(where + ": expected a string");
        experiment = v.get<std::string>();
      } else if (key == "dist") {
        if (!v.is_string()) throw std::invalid_argument(where + ": expected a string");
        dist_name = v.get<std::string>();
      } else if (key == "params") {
        dist_params = as_reals(v, where);
      } else if (key == "odd_dist") {
        if (!v.is_string()) throw std::invalid_argument(where + ": expected a string");
        odd_name = v.get<std::string>();
      } else if (key == "odd_params") {
        odd_params = as_reals(v, where);
      } else if (key == "ray") {
        const auto r = as_reals(v, where);
        if (r.size() != 2) throw std::invalid_argument(where + ": expected [q, den]");
        cfg.ray = Ray{static_cast<std::int64_t>(r[0]), static_cast<std::int64_t>(r[1])};
        if (static_cast<double>(cfg.ray->q) != r[0] || static_cast<double>(cfg.ray->den) != r[1]) {
          throw std::invalid_argument(where + ": q and den must be integers");
        }
      } else if (key == "degrees") {
        cfg.degrees.clear();
        if (!v.is_array()) throw std::invalid_argument(where + ": expected a list");
        for (const auto& x : v) cfg.degrees.push_back(as_count(x, where));
      } else if (key == "trials") {
        cfg.trials = as_count(v, where);
      } else if (key == "deltas") {
        cfg.deltas = as_reals(v, where);
      } else if (key == "sectors") {
        cfg.sectors.clear();
        if (!v.is_array()) throw std::invalid_argument(where + ": expected a list of [alpha, beta]");
        for (const auto& x : v) {
          const auto pair = as_reals(x, where);
          if (pair.size() != 2) throw std::invalid_argument(where + ": expected [alpha, beta]");
          cfg.sectors.emplace_back(pair[0], pair[1]);
        }
      } else if (key == "weyl_ls") {
        cfg.weyl_ls.clear();
        if (!v.is_array()) throw std::invalid_argument(where + ": expected a list");
        for (const auto& x : v) cfg.weyl_ls.push_back(static_cast<int>(as_count(x, where)));
      } else if (key == "epsilon") {
        if (!v.is_number()) throw std::invalid_argument(where + ": expected a number");
        cfg.epsilon = v.get<double>();
      } else if (key == "grid_rings") {
        cfg.grid_rings = as_reals(v, where);
      } else if (key == "grid_sectors") {
        cfg.grid_sectors = as_count(v, where);
      } else if (key == "seed") {
        cfg.master_seed = as_count(v, where);
      } else if (key == "tol") {
        if (!v.is_number()) throw std::invalid_argument(where + ": expected a number");
        cfg.tol = v.get<double>();
      } else if (key == "workers") {
        cfg.workers = as_count(v, where);
      } else {
        throw std::invalid_argument(where + ": unknown key");
      }
    }
  }
  cfg.dist = make_distribution(dist_name, dist_params);
  if (odd_name) cfg.odd_dist = make_distribution(*odd_name, odd_params);
  cfg.validate();
  return {cfg, experiment};
}

std::pair<ExperimentConfig, std::optional<std::string>> load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

SeedPath trial_seed(const ExperimentConfig& cfg, std::size_t n, std::size_t trial) {
  return {cfg.master_seed, (static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint64_t>(trial)};
}

TrialRecord run_trial(const ExperimentConfig& cfg, ExperimentKind kind, std::size_t n, std::size_t trial) {
  TrialRecord rec;
  rec.n = n;
  rec.trial = trial;
  const CoefficientVector cv = draw_coefficients(cfg, n, trial_seed(cfg, n, trial));
  const Polynomial poly = cv.polynomial();

  if (kind == ExperimentKind::realroot) {
    const RealPoly real = cfg.ray ? ray_real_projection(poly, cfg.ray->q, cfg.ray->den) : real_coefficients(poly);
    const RealRootReport report = count_real_roots_report(real);
    rec.real_roots = report.count;
    rec.real_method = report.method;
    rec.extended_precision = report.extended_precision;
    return rec;
  }

  SolveOptions opts;
  opts.tol = cfg.tol;
  const RootSet rs = solve_roots(poly, opts);
  rec.converged = rs.converged;
  rec.iterations = rs.iterations;
  rec.max_residual = rs.max_residual();
  rec.extended_precision = rs.extended_precision;

  const ZeroMeasure m(rs);
  const double count = static_cast<double>(m.size());
  rec.measured = true;
  for (double d : cfg.deltas) rec.annulus.push_back(static_cast<double>(radial_count(m, 1 - d, 1 + d)) / count);
  rec.inner_fraction = static_cast<double>(radial_count(m, 0, cfg.epsilon)) / count;
  std::vector<std::pair<double, double>> storage;
  for (const auto& [a, b] : sectors_of(cfg, storage)) {
    rec.sector_props.push_back(static_cast<double>(sector_count(m, a, b)) / count);
  }
  for (int l : cfg.weyl_ls) rec.weyl.push_back(std::abs(weyl_sum(m, l)));
  rec.ks = ks_uniform_args(m);
  rec.box_discrepancy = grid_discrepancy(cfg, m);
  return rec;
}

std::vector<TrialRecord> run_trials_serial(const ExperimentConfig& cfg, ExperimentKind kind) {
  std::vector<TrialRecord> out;
  out.reserve(cfg.degrees.size() * cfg.trials);
  for (std::size_t n : cfg.degrees) {
    for (std::size_t t = 0; t < cfg.trials; ++t) out.push_back(run_trial(cfg, kind, n, t));
  }
  return out;
}

std::vector<TrialRecord> run_trials(const ExperimentConfig& cfg, ExperimentKind kind) {
  const std::size_t total = cfg.degrees.size() * cfg.trials;
  std::vector<TrialRecord> out(total);
  std::vector<std::exception_ptr> errors(total);
  const int workers = cfg.workers > 0 ? static_cast<int>(cfg.workers) : omp_get_max_threads();
  // Largest degrees first so the expensive trials do not trail at the end.
  const auto count = static_cast<std::ptrdiff_t>(total);
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto slot = static_cast<std::size_t>(count - 1 - i);
    try {
      out[slot] = run_trial(cfg, kind, cfg.degrees[slot / cfg.trials], slot % cfg.trials);
    } catch (...) {
      errors[slot] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

FieldSummary summarize(std::string field, std::vector<double> values) {
  FieldSummary s;
  s.field = std::move(field);
  s.count = values.size();
  if (values.empty()) return s;
  double sum = 0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  double ss = 0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.variance = values.size() > 1 ? ss / static_cast<double>(values.size() - 1) : 0.0;
  s.std_error = std::sqrt(s.variance / static_cast<double>(values.size()));
  std::sort(values.begin(), values.end());
  s.min = values.front();
  s.q25 = quantile(values, 0.25);
  s.median = quantile(values, 0.5);
  s.q75 = quantile(values, 0.75);
  s.max = values.back();
  return s;
}

const FieldSummary& DegreeSummary::at(std::string_view field) const {
  for (const auto& f : fields) {
    if (f.field == field) return f;
  }
  throw std::out_of_range("no summary field '" + std::string(field) + "'");
}

bool ExperimentResult::passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.passed; });
}

const DegreeSummary& ExperimentResult::degree(std::size_t n) const {
  for (const auto& d : summary) {
    if (d.n == n) return d;
  }
  throw std::out_of_range("no summary for degree " + std::to_string(n));
}

std::vector<std::pair<std::string, double>> record_fields(const ExperimentConfig& cfg, const TrialRecord& r) {
  std::vector<std::pair<std::string, double>> f;
  if (r.measured) {
    f.emplace_back("converged", r.converged ? 1.0 : 0.0);
    f.emplace_back("iterations", static_cast<double>(r.iterations));
    f.emplace_back("max_residual", r.max_residual);
    for (std::size_t i = 0; i < r.annulus.size(); ++i) f.emplace_back(field_name("annulus_", cfg.deltas[i]), r.annulus[i]);
    f.emplace_back("inner_fraction", r.inner_fraction);
    std::vector<std::pair<double, double>> storage;
    const auto& sectors = sectors_of(cfg, storage);
    for (std::size_t i = 0; i < r.sector_props.size(); ++i) {
      f.emplace_back("sector_" + std::to_string(i), r.sector_props[i]);
    }
    for (std::size_t i = 0; i < r.sector_props.size(); ++i) {
      const double expected = (sectors[i].second - sectors[i].first) / kTwoPi;
      f.emplace_back("sector_dev_" + std::to_string(i), std::fabs(r.sector_props[i] - expected));
    }
    for (std::size_t i = 0; i < r.weyl.size(); ++i) f.emplace_back("weyl_" + std::to_string(cfg.weyl_ls[i]), r.weyl[i]);
    f.emplace_back("ks", r.ks);
    f.emplace_back("box_discrepancy", r.box_discrepancy);
  }
  if (r.real_roots) {
    f.emplace_back("real_roots", static_cast<double>(*r.real_roots));
    f.emplace_back("real_roots_per_n", static_cast<double>(*r.real_roots) / static_cast<double>(r.n));
    f.emplace_back("real_uncertified", r.real_method == RealCountMethod::uncertified ? 1.0 : 0.0);
  }
  return f;
}

std::vector<DegreeSummary> summarize_records(const ExperimentConfig& cfg, const std::vector<TrialRecord>& records) {
  std::vector<DegreeSummary> out;
  for (std::size_t n : cfg.degrees) {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;
    for (const auto& r : records) {
      if (r.n != n) continue;
      const auto fields = record_fields(cfg, r);
      if (names.empty()) {
        for (const auto& [name, v] : fields) names.push_back(name);
        columns.resize(names.size());
      }
      for (std::size_t i = 0; i < fields.size() && i < columns.size(); ++i) columns[i].push_back(fields[i].second);
    }
    DegreeSummary d;
    d.n = n;
    for (std::size_t i = 0; i < names.size(); ++i) d.fields.push_back(summarize(names[i], std::move(columns[i])));
    out.push_back(std::move(d));
  }
  return out;
}

ExperimentResult run_radial_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  if (!cfg.dist.log_moment_finite || (cfg.odd_dist && !cfg.odd_dist->log_moment_finite)) {
    throw std::invalid_argument("radial experiment needs a law with E log(1 + |xi|) finite");
  }
  ExperimentResult res = collect(ExperimentKind::radial, cfg);
  res.assertions.push_back(convergence_assertion(res.records));
  for (double d : cfg.deltas) res.assertions.push_back(non_decreasing_within_2se(res.summary, field_name("annulus_", d)));
  return res;
}

ExperimentResult run_divergence_experiment(const ExperimentConfig& cfg_in) {
  cfg_in.validate();
  if (cfg_in.dist.log_moment_finite && (!cfg_in.odd_dist || cfg_in.odd_dist->log_moment_finite)) {
    throw std::invalid_argument("divergence experiment needs a law with E log(1 + |xi|) infinite");
  }
  // The assertion is stated for the delta = 0.5 annulus, so it is always reported.
  ExperimentConfig cfg = cfg_in;
  if (std::find(cfg.deltas.begin(), cfg.deltas.end(), 0.5) == cfg.deltas.end()) cfg.deltas.push_back(0.5);
  const std::size_t wide = static_cast<std::size_t>(std::find(cfg.deltas.begin(), cfg.deltas.end(), 0.5) -
                                                    cfg.deltas.begin());
  ExperimentResult res = collect(ExperimentKind::divergence, cfg);
  res.assertions.push_back(convergence_assertion(res.records));
  double min_wide = 1;
  std::size_t all_inside = 0;
  for (const auto& r : res.records) {
    min_wide = std::min(min_wide, r.annulus[wide]);
    all_inside += r.inner_fraction == 1.0;
  }
  res.reported.emplace_back("all_inside_epsilon_fraction",
                            static_cast<double>(all_inside) / static_cast<double>(res.records.size()));
  res.reported.emplace_back("min_annulus_0.5", min_wide);
  res.assertions.push_back({"min annulus_0.5 fraction <= 0.5", min_wide <= 0.5, format_number(min_wide)});
  return res;
}

ExperimentResult run_angular_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult res = collect(ExperimentKind::angular, cfg);
  res.assertions.push_back(convergence_assertion(res.records));
  res.assertions.push_back(strictly_decreasing(res.summary, "ks"));
  return res;
}

ExperimentResult run_realroot_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const bool real = cfg.dist.is_real && (!cfg.odd_dist || cfg.odd_dist->is_real);
  if (!real && !cfg.ray) throw std::invalid_argument("realroot experiment needs a real law or a ray");
  ExperimentResult res = collect(ExperimentKind::realroot, cfg);
  std::size_t escalated = 0;
  for (const auto& r : res.records) escalated += r.real_method == RealCountMethod::uncertified;
  const double rate = static_cast<double>(escalated) / static_cast<double>(res.records.size());
  res.assertions.push_back({"uncertified real-root counts <= 1%", rate <= kMaxFailureRate,
                            std::to_string(escalated) + " of " + std::to_string(res.records.size())});
  res.assertions.push_back(non_increasing_within_2se(res.summary, "real_roots_per_n"));
  if (res.summary.size() >= 2) {
    // Least-squares slope of mean M_n against log n.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double k = static_cast<double>(res.summary.size());
    for (const auto& d : res.summary) {
      const double x = std::log(static_cast<double>(d.n));
      const double y = d.at("real_roots").mean;
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    res.reported.emplace_back("slope_vs_log_n", (k * sxy - sx * sy) / (k * sxx - sx * sx));
  }
  return res;
}

ExperimentResult run_arc_measure_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  if (!cfg.dist.log_moment_finite || (cfg.odd_dist && !cfg.odd_dist->log_moment_finite)) {
    throw std::invalid_argument("arc-measure experiment needs a law with E log(1 + |xi|) finite");
  }
  ExperimentResult res = collect(ExperimentKind::arc, cfg);
  res.assertions.push_back(convergence_assertion(res.records));
  res.assertions.push_back(non_increasing_within_2se(res.summary, "box_discrepancy"));
  return res;
}

ExperimentResult run_experiment(ExperimentKind kind, const ExperimentConfig& cfg) {
  switch (kind) {
    case ExperimentKind::radial:
      return run_radial_experiment(cfg);
    case ExperimentKind::divergence:
      return run_divergence_experiment(cfg);
    case ExperimentKind::angular:
      return run_angular_experiment(cfg);
    case ExperimentKind::realroot:
      return run_realroot_experiment(cfg);
    case ExperimentKind::arc:
      return run_arc_measure_experiment(cfg);
  }
  throw std::logic_error("unhandled experiment kind");
}

double estimate_concentration(std::vector<double> samples, double h) {
  if (!(h > 0)) throw std::invalid_argument("estimate_concentration: h must be positive");
  if (samples.empty()) throw std::invalid_argument("estimate_concentration: no samples");
  std::sort(samples.begin(), samples.end());
  // Some optimal window starts at a sample; count samples in [x_i, x_i + h].
  std::size_t best = 0;
  std::size_t hi = 0;
  for (std::size_t lo = 0; lo < samples.size(); ++lo) {
    hi = std::max(hi, lo);
    while (hi < samples.size() && samples[hi] <= samples[lo] + h) ++hi;
    best = std::max(best, hi - lo);
  }
  return static_cast<double>(best) / static_cast<double>(samples.size());
}

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

void write_records_jsonl(std::ostream& out, const ExperimentConfig& cfg, const std::vector<TrialRecord>& records) {
  std::vector<std::pair<double, double>> storage;
  const auto& sectors = sectors_of(cfg, storage);
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["trial"] = r.trial;
    const SeedPath seed = trial_seed(cfg, r.n, r.trial);
    j["seed"] = {seed.master, seed.trial};
    if (r.measured) {
      j["converged"] = r.converged;
      j["iterations"] = r.iterations;
      j["max_residual"] = r.max_residual;
      j["extended_precision"] = r.extended_precision;
      nlohmann::ordered_json ann = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < r.annulus.size(); ++i) ann[format_number(cfg.deltas[i])] = r.annulus[i];
      j["annulus_fraction"] = ann;
      j["inner_fraction"] = r.inner_fraction;
      nlohmann::ordered_json sec = nlohmann::ordered_json::array();
      for (std::size_t i = 0; i < r.sector_props.size(); ++i) {
        sec.push_back({{"alpha", sectors[i].first}, {"beta", sectors[i].second}, {"proportion", r.sector_props[i]}});
      }
      j["sectors"] = sec;
      nlohmann::ordered_json w = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < r.weyl.size(); ++i) w[std::to_string(cfg.weyl_ls[i])] = r.weyl[i];
      j["weyl"] = w;
      j["ks"] = r.ks;
      j["box_discrepancy"] = r.box_discrepancy;
    }
    if (r.real_roots) {
      j["real_roots"] = *r.real_roots;
      j["real_method"] = r.real_method == RealCountMethod::exact_sturm       ? "exact_sturm"
                         : r.real_method == RealCountMethod::inclusion_disks ? "inclusion_disks"
                                                                              : "uncertified";
      j["extended_precision"] = r.extended_precision;
    }
    out << j.dump() << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<DegreeSummary>& summary) {
  out << "n,field,count,mean,variance,std_error,min,q25,median,q75,max\n";
  for (const auto& d : summary) {
    for (const auto& f : d.fields) {
      out << d.n << ',' << f.field << ',' << f.count << ',' << format_number(f.mean) << ','
          << format_number(f.variance) << ',' << format_number(f.std_error) << ',' << format_number(f.min) << ','
          << format_number(f.q25) << ',' << format_number(f.median) << ',' << format_number(f.q75) << ','
          << format_number(f.max) << '\n';
    }
  }
}

}  // namespace polyzero
