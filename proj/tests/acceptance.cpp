// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <iostream>

#include "polyzero/acceptance.hpp"

int main() {
  polyzero::AcceptanceOptions opts;
  const auto results = polyzero::run_acceptance(opts, std::cout, std::cerr);
  bool ok = true;
  std::cout << '\n';
  for (const auto& r : results) {
    std::cout << polyzero::format_verdict(r) << '\n';
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}
