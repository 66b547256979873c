#pragma once

#include <map>
#include <string>
#include <vector>

#include "tocpur/io.hpp"

namespace tocpur {

/// Keeps the rows of instances that every planner in the table solved.
std::vector<ResultRow> all_solved_subset(const std::vector<ResultRow>& rows);

/// Planner names in order of first appearance.
std::vector<std::string> planners_in(const std::vector<ResultRow>& rows);

/// Mean total cost keyed by horizon, then planner.
std::map<int, std::map<std::string, double>> mean_cost_by_horizon(const std::vector<ResultRow>& rows);

/// Failed-episode counts keyed by horizon, then planner.
std::map<int, std::map<std::string, int>> failures_by_horizon(const std::vector<ResultRow>& rows);

struct PairComparison {
  int horizon = 0;
  std::size_t instances = 0;
  double mean_a = 0.0;
  double mean_b = 0.0;
  double t = 0.0;
  double p = 1.0;
};

/// One row per horizon comparing total costs of two planners on the
/// all-solved subset. Horizons with fewer than two shared instances are
/// skipped.
std::vector<PairComparison> compare_planners(const std::vector<ResultRow>& rows, const std::string& a,
                                             const std::string& b, bool welch = false);

}  // namespace tocpur
