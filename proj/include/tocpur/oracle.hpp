#pragma once

#include <optional>
#include <vector>

#include "tocpur/instance.hpp"
#include "tocpur/plan.hpp"
#include "tocpur/tocp.hpp"

namespace tocpur::oracle {

inline constexpr int kMaxVertices = 6;
inline constexpr int kMaxAgents = 2;

struct OracleOptions {
  /// Agents may stay home (mirrors TocpOptions::allow_idle_agents).
  bool allow_idle_agents = false;
  /// Vertex-simple cycles, disjoint across agents (the TOP feasible set).
  bool simple_cycles = false;
};

struct SingleIterationResult {
  double reward = 0.0;
  FleetPlan plan;
};

/// Exhaustive search over per-agent closed walks that leave the depot once and
/// use each directed edge at most once. Returns nullopt when no fleet plan
/// satisfies the budget and must-visit set. Refuses instances beyond
/// kMaxVertices / kMaxAgents.
std::optional<SingleIterationResult> brute_force_single_iteration(const PlanningInput& input,
                                                                  const OracleOptions& options = {});

struct HorizonResult {
  double total_cost = 0.0;
  std::vector<FleetPlan> plans;
  std::vector<double> residual_by_iteration;
};

/// Exhaustive search over H-tuples of single-agent plans minimizing the
/// cumulative residual cost under the instance's known kappa. Requires one
/// agent, a noise-free instance, and horizon <= 3.
std::optional<HorizonResult> brute_force_horizon(const Instance& instance);

/// Plays each iteration with the single-iteration optimum computed from the
/// true accumulated costs.
std::optional<HorizonResult> chain_per_iteration_optima(const Instance& instance);

}  // namespace tocpur::oracle
