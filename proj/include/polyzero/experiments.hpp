#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polyzero/distributions.hpp"
#include "polyzero/realroots.hpp"

namespace polyzero {

enum class ExperimentKind { radial, divergence, angular, realroot, arc };

ExperimentKind parse_experiment_kind(std::string_view name);
std::string_view experiment_name(ExperimentKind kind);

struct Ray {
  std::int64_t q = 0;
  std::int64_t den = 1;
};

struct ExperimentConfig {
  CoeffDistribution dist = make_distribution("gaussian");
  // When set, odd powers draw from this law and even powers from dist.
  std::optional<CoeffDistribution> odd_dist;
  // When set, real-root counts use eta_k = Re(c_k exp(2 pi i k q / den)).
  std::optional<Ray> ray;
  std::vector<std::size_t> degrees{125, 250, 500, 1000};
  std::size_t trials = 100;
  std::vector<double> deltas{0.05, 0.1};
  std::vector<std::pair<double, double>> sectors;
  std::vector<int> weyl_ls{1, 2, 3, 4};
  // Inner radius for R_n(0, epsilon) in the divergence experiment.
  double epsilon = 0.5;
  // Ring edges and number of equal sectors of the annular-sector grid.
  std::vector<double> grid_rings{0.5, 0.9, 1.1, 1.5};
  std::size_t grid_sectors = 8;
  std::uint64_t master_seed = 1;
  double tol = 1e-12;
  // 0 means every available thread.
  std::size_t workers = 0;

  // Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
};

// key = value lines, value in JSON syntax; several assignments may share a
// line when separated by commas. '#' starts a comment. Returns the config and
// the experiment name if the file sets one. Throws std::invalid_argument.
std::pair<ExperimentConfig, std::optional<std::string>> parse_config(std::string_view text);
std::pair<ExperimentConfig, std::optional<std::string>> load_config(const std::string& path);

struct TrialRecord {
  std::size_t n = 0;
  std::size_t trial = 0;
  bool converged = true;
  int iterations = 0;
  double max_residual = 0;
  bool extended_precision = false;

  bool measured = false;  // zero-measure fields below are filled
  std::vector<double> annulus;        // R_n(1 - d, 1 + d) / n per delta
  double inner_fraction = 0;          // R_n(0, epsilon) / n
  std::vector<double> sector_props;   // S_n(alpha, beta) / n per sector
  std::vector<double> weyl;           // |weyl_sum(l)| per l
  double ks = 0;
  double box_discrepancy = 0;         // max over grid of |N_n(box)/n - arc|

  std::optional<std::size_t> real_roots;
  RealCountMethod real_method = RealCountMethod::exact_sturm;

  bool operator==(const TrialRecord&) const = default;
};

// The (master, key) substream of trial t at degree n; key = n * 2^32 + t.
SeedPath trial_seed(const ExperimentConfig& cfg, std::size_t n, std::size_t trial);

// One trial. Pure function of its arguments.
TrialRecord run_trial(const ExperimentConfig& cfg, ExperimentKind kind, std::size_t n, std::size_t trial);

// Every (degree, trial) pair, ordered by degree then trial index. The
// parallel version schedules trials over cfg.workers threads and returns the
// same records as the serial reference.
std::vector<TrialRecord> run_trials(const ExperimentConfig& cfg, ExperimentKind kind);
std::vector<TrialRecord> run_trials_serial(const ExperimentConfig& cfg, ExperimentKind kind);

struct FieldSummary {
  std::string field;
  std::size_t count = 0;
  double mean = 0;
  double variance = 0;
  double std_error = 0;
  double min = 0;
  double q25 = 0;
  double median = 0;
  double q75 = 0;
  double max = 0;
};

FieldSummary summarize(std::string field, std::vector<double> values);

struct DegreeSummary {
  std::size_t n = 0;
  std::vector<FieldSummary> fields;

  // Throws std::out_of_range for an unknown field.
  const FieldSummary& at(std::string_view field) const;
};

struct Assertion {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ExperimentResult {
  ExperimentKind kind = ExperimentKind::radial;
  // The configuration the trials ran with, after any experiment adjustments.
  ExperimentConfig config;
  std::vector<TrialRecord> records;
  std::vector<DegreeSummary> summary;
  // Scalars reported beside the per-degree summary, e.g. a fitted slope.
  std::vector<std::pair<std::string, double>> reported;
  std::vector<Assertion> assertions;

  bool passed() const;
  const DegreeSummary& degree(std::size_t n) const;
};

// Named per-trial values in a fixed order; the summary and CSV use the same names.
std::vector<std::pair<std::string, double>> record_fields(const ExperimentConfig& cfg, const TrialRecord& r);
std::vector<DegreeSummary> summarize_records(const ExperimentConfig& cfg, const std::vector<TrialRecord>& records);

// Each experiment validates cfg (std::invalid_argument on a violated
// precondition), runs the trials and evaluates its assertions. Solver
// non-convergence in more than 1% of trials fails an assertion.
ExperimentResult run_radial_experiment(const ExperimentConfig& cfg);
ExperimentResult run_divergence_experiment(const ExperimentConfig& cfg);
ExperimentResult run_angular_experiment(const ExperimentConfig& cfg);
ExperimentResult run_realroot_experiment(const ExperimentConfig& cfg);
ExperimentResult run_arc_measure_experiment(const ExperimentConfig& cfg);
ExperimentResult run_experiment(ExperimentKind kind, const ExperimentConfig& cfg);

// Empirical concentration function sup_a #{i : a <= x_i <= a + h} / N.
double estimate_concentration(std::vector<double> samples, double h);

// Shortest decimal string that reads back to the same double.
std::string format_number(double x);

// One JSON object per line per trial.
void write_records_jsonl(std::ostream& out, const ExperimentConfig& cfg, const std::vector<TrialRecord>& records);
// Header n,field,count,mean,variance,std_error,min,q25,median,q75,max.
void write_summary_csv(std::ostream& out, const std::vector<DegreeSummary>& summary);

}  // namespace polyzero
