#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tocpur/instance.hpp"
#include "tocpur/milp.hpp"
#include "tocpur/plan.hpp"
#include "tocpur/tocp.hpp"

namespace tocpur {

enum class Planner { kTocp, kTop, kGreedy };

std::string_view to_string(Planner planner);
std::optional<Planner> parse_planner(std::string_view name);

struct EpisodeOptions {
  double time_limit_seconds = 1000.0;
  TocpOptions model;
  /// Stop after this iteration; 0 plays the whole horizon.
  int last_iteration = 0;
};

struct IterationRecord {
  int t = 0;
  std::string status;
  /// Empty when the planner produced nothing usable.
  std::optional<FleetPlan> plan;
  VertexArray<double> c_hat;
  VertexArray<bool> visited;
  double planned_reward = 0.0;
  double residual_cost = 0.0;
  double compute_seconds = 0.0;
  int model_variables = 0;
  int model_constraints = 0;
};

struct EpisodeResult {
  std::string instance_id;
  int horizon = 0;
  Planner planner = Planner::kTocp;
  std::vector<IterationRecord> iterations;
  double total_cost = 0.0;
  bool failed = false;
  VertexArray<double> mu_hat;
};

/// Called after every MIP solve with the model it solved.
using SolveObserver = std::function<void(int t, const PlanningInput&, const RoutingModel&, const milp::MilpSolution&)>;

/// Plays the closed loop: estimate rates, predict costs, plan, visit, observe.
/// An iteration whose planner returns no plan visits only the depot and marks
/// the episode failed.
EpisodeResult run_episode(const Instance& instance, Planner planner, const EpisodeOptions& options = {},
                          const SolveObserver& observer = {});

/// Cumulative residual cost recomputed from the instance's growth and a visit log.
double replay_cost(const Instance& instance, const std::vector<VertexArray<bool>>& visits);

}  // namespace tocpur
