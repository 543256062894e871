#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace biortho {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;  // measured values against their tolerances
  double seconds = 0.0;
  double limit_seconds = 0.0;
};

/// Identifiers of the acceptance criteria, 1..10.
std::vector<int> acceptance_ids();

/// Runs one criterion. A criterion passes when every check holds and it
/// finishes within its runtime limit; exceptions count as failures.
CriterionResult run_criterion(int id);

/// One line: "AC<id> PASS|FAIL <title>: <detail> [<seconds> s / <limit> s]".
std::string format_result(const CriterionResult& r);

/// Runs the given criteria in order, printing one line per criterion as it
/// completes and a final summary line. Returns the number of failures.
int run_acceptance(const std::vector<int>& ids, std::ostream& os);

}  // namespace biortho
