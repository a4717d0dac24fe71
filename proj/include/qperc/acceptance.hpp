#pragma once
// Self-check suite: every quantitative claim the library is expected to
// uphold at desk scale, each verified mechanically and reported as one
// pass/fail line. Fixed seeds make the whole suite deterministic; fitted
// constants are frozen in the implementation with their calibration noted.

#include <string>
#include <vector>

namespace qperc {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;   // one-line summary of the measured quantities
  double seconds = 0.0;
};

// Runs all criteria in order (never stops early), printing one line per
// criterion to stdout as it completes; `verbose` appends the detail string.
std::vector<CriterionResult> run_acceptance(bool verbose = true);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace qperc
