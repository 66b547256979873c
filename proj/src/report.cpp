#include "tocpur/report.hpp"

#include <algorithm>
#include <set>

#include "tocpur/stats.hpp"

namespace tocpur {

std::vector<std::string> planners_in(const std::vector<ResultRow>& rows) {
  std::vector<std::string> names;
  for (const auto& row : rows) {
    if (std::find(names.begin(), names.end(), row.planner) == names.end()) names.push_back(row.planner);
  }
  return names;
}

std::vector<ResultRow> all_solved_subset(const std::vector<ResultRow>& rows) {
  const std::size_t planner_count = planners_in(rows).size();
  std::map<std::string, std::set<std::string>> solved_by;
  std::set<std::string> failed;
  for (const auto& row : rows) {
    if (row.failed) {
      failed.insert(row.instance_id);
    } else {
      solved_by[row.instance_id].insert(row.planner);
    }
  }
  std::vector<ResultRow> kept;
  for (const auto& row : rows) {
    if (failed.contains(row.instance_id)) continue;
    if (solved_by[row.instance_id].size() == planner_count) kept.push_back(row);
  }
  return kept;
}

std::map<int, std::map<std::string, double>> mean_cost_by_horizon(const std::vector<ResultRow>& rows) {
  std::map<int, std::map<std::string, std::pair<double, int>>> sums;
  for (const auto& row : rows) {
    auto& [sum, count] = sums[row.horizon][row.planner];
    sum += row.total_cost;
    ++count;
  }
  std::map<int, std::map<std::string, double>> means;
  for (const auto& [h, by_planner] : sums) {
    for (const auto& [planner, acc] : by_planner) means[h][planner] = acc.first / acc.second;
  }
  return means;
}

std::map<int, std::map<std::string, int>> failures_by_horizon(const std::vector<ResultRow>& rows) {
  std::map<int, std::map<std::string, int>> counts;
  for (const auto& row : rows) counts[row.horizon][row.planner] += row.failed ? 1 : 0;
  return counts;
}

std::vector<PairComparison> compare_planners(const std::vector<ResultRow>& rows, const std::string& a,
                                             const std::string& b, bool welch) {
  std::map<int, std::map<std::string, std::pair<double, double>>> paired;
  for (const auto& row : all_solved_subset(rows)) {
    if (row.planner == a) paired[row.horizon][row.instance_id].first = row.total_cost;
    if (row.planner == b) paired[row.horizon][row.instance_id].second = row.total_cost;
  }
  std::vector<PairComparison> out;
  for (const auto& [h, by_instance] : paired) {
    std::vector<double> xs, ys;
    for (const auto& [id, costs] : by_instance) {
      xs.push_back(costs.first);
      ys.push_back(costs.second);
    }
    if (xs.size() < 2) continue;
    const auto test = welch ? stats::welch_t_test(xs, ys) : stats::t_test_independent(xs, ys);
    out.push_back({h, xs.size(), stats::mean(xs), stats::mean(ys), test.t, test.p});
  }
  return out;
}

}  // namespace tocpur
