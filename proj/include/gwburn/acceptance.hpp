#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gwburn::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string details;
  double seconds = 0.0;
};

/// Exhaustive / closed-form criteria (fast): 1-4.
const std::vector<int>& oracle_ids();

/// Seeded Monte Carlo criteria (slow): 5-13.
const std::vector<int>& statistical_ids();

std::vector<int> all_ids();

CriterionResult run_criterion(int id, int workers);

/// Runs the given criteria, printing one pass/fail line each; returns the
/// number of failures.
int run_suite(const std::vector<int>& ids, int workers, std::ostream& out);

}  // namespace gwburn::acceptance
