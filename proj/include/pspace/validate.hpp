#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pspace {

enum class ValidationLevel { fast, full };

struct CriterionResult {
  int id = 0;
  std::string name;
  bool run = false;   // false when skipped at this level
  bool pass = false;  // meaningful only when run
  double seconds = 0.0;
  std::string detail;
};

/// Runs the acceptance criteria (all at full level; the N <= 40 subset at
/// fast level). `progress`, when given, receives one line per criterion.
std::vector<CriterionResult> run_acceptance(ValidationLevel level, int threads,
                                            std::ostream* progress = nullptr);

/// JSON report: {"level", "criteria": [...], "all_pass"}.
std::string acceptance_report_json(ValidationLevel level,
                                   const std::vector<CriterionResult>& results);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace pspace
