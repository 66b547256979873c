#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tocpur/instance.hpp"
#include "tocpur/plan.hpp"
#include "tocpur/simulator.hpp"

namespace tocpur {

/// Raised for unreadable or inconsistent input files.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json instance_to_json(const Instance& instance);
/// Parses and checks an instance document; edges are listed once per
/// unordered pair and mirrored on load.
Instance instance_from_json(const nlohmann::json& doc);

void write_instance(const Instance& instance, const std::filesystem::path& path);
Instance read_instance(const std::filesystem::path& path);

nlohmann::json plan_to_json(const FleetPlan& plan);
FleetPlan plan_from_json(const nlohmann::json& doc, const Graph& graph);

/// One results row per (instance, planner).
struct ResultRow {
  std::string instance_id;
  int horizon = 0;
  std::string planner;
  double total_cost = 0.0;
  std::vector<double> costs;
  std::vector<double> compute_seconds;
  std::vector<std::string> statuses;
  bool failed = false;
  std::vector<double> mu_hat;
};

ResultRow to_row(const EpisodeResult& episode);

/// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

void write_results_header(std::ostream& out);
void write_result_row(std::ostream& out, const ResultRow& row);
std::vector<ResultRow> read_results(const std::filesystem::path& path);

}  // namespace tocpur
