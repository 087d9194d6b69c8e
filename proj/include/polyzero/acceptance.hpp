#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace polyzero {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  double seconds = 0;
  double limit_seconds = 0;
  std::string detail;
};

struct AcceptanceOptions {
  // Worker count of the main pass; the determinism criterion repeats the
  // data pass with 8 workers (or 1 when this is already 8).
  std::size_t workers = 1;
  bool check_determinism = true;
};

// Runs the acceptance criteria with their pinned seeds. Measured values go to
// `data` (byte-identical across runs and worker counts), timings to `diag`.
// Returns one result per criterion in order.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::ostream& data, std::ostream& diag);

// "PASS  3  title: detail" style line without timing.
std::string format_verdict(const CriterionResult& r);

}  // namespace polyzero
