#include "tocpur/simulator.hpp"

#include <chrono>
#include <stdexcept>

#include "tocpur/cost_process.hpp"
#include "tocpur/estimator.hpp"
#include "tocpur/greedy.hpp"

namespace tocpur {
namespace {

struct PlanOutcome {
  std::optional<FleetPlan> plan;
  std::string status;
  int variables = 0;
  int constraints = 0;
};

PlanOutcome plan_with_mip(Planner planner, int t, const PlanningInput& in, const DistanceMatrix& dist,
                          const EpisodeOptions& options, const SolveObserver& observer) {
  RoutingModel routing = planner == Planner::kTop ? build_top(in, options.model) : build_tocp(in, options.model);

  milp::SolveOptions solve_options;
  solve_options.time_limit_seconds = options.time_limit_seconds;
  // Greedy's routes may pass through the depot mid-walk or repeat edges,
  // which the model forbids, so they are reshaped before seeding the search.
  // Greedy refuses inputs it cannot serve; the solver then starts cold.
  try {
    const FleetPlan start = conform_plan(in.graph, greedy_plan(in, dist), in.c_hat, in.l_max, in.must_visit);
    solve_options.initial_incumbent = plan_to_assignment(start, routing.handles, in.graph);
  } catch (const std::invalid_argument&) {
  }

  const milp::MilpSolution solution = milp::make_default_solver()->solve(routing.model, solve_options);
  if (observer) observer(t, in, routing, solution);

  PlanOutcome out;
  out.status = std::string(milp::to_string(solution.status));
  out.variables = routing.model.num_variables();
  out.constraints = routing.model.num_constraints();
  if (milp::has_solution(solution.status)) out.plan = extract_routes(solution.assignment, routing.handles, in.graph);
  return out;
}

}  // namespace

std::string_view to_string(Planner planner) {
  switch (planner) {
    case Planner::kTocp:
      return "tocp";
    case Planner::kTop:
      return "top";
    case Planner::kGreedy:
      return "greedy";
  }
  return "?";
}

std::optional<Planner> parse_planner(std::string_view name) {
  for (Planner p : {Planner::kTocp, Planner::kTop, Planner::kGreedy}) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

EpisodeResult run_episode(const Instance& inst, Planner planner, const EpisodeOptions& options,
                          const SolveObserver& observer) {
  if (auto problem = check_instance(inst)) throw std::invalid_argument("instance: " + *problem);
  if (options.last_iteration < 0 || options.last_iteration > inst.horizon) {
    throw std::invalid_argument("last_iteration outside the horizon");
  }
  const int n = inst.num_vertices();
  const int last = options.last_iteration == 0 ? inst.horizon : options.last_iteration;
  const DistanceMatrix dist = all_pairs_shortest(inst.graph);

  CostState costs(n);
  Estimator estimator(n, inst.mu_default);
  EpisodeResult result;
  result.instance_id = inst.id;
  result.horizon = inst.horizon;
  result.planner = planner;

  for (int t = 1; t <= last; ++t) {
    IterationRecord rec;
    rec.t = t;
    rec.c_hat = estimator.predicted_cost(t);
    const PlanningInput in{inst.graph, rec.c_hat, inst.num_agents, inst.l_max, inst.must_visit};

    const auto started = std::chrono::steady_clock::now();
    if (planner == Planner::kGreedy) {
      try {
        rec.plan = greedy_plan(in, dist);
        rec.status = "heuristic";
      } catch (const std::invalid_argument&) {
        rec.status = "infeasible";
      }
    } else {
      PlanOutcome outcome = plan_with_mip(planner, t, in, dist, options, observer);
      rec.plan = std::move(outcome.plan);
      rec.status = std::move(outcome.status);
      rec.model_variables = outcome.variables;
      rec.model_constraints = outcome.constraints;
    }
    rec.compute_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    rec.visited = VertexArray<bool>(n, false);
    rec.visited[kDepot] = true;
    if (rec.plan) {
      rec.visited = rec.plan->visited(n);
      for (int v = 2; v <= n; ++v) {
        if (rec.visited[v]) rec.planned_reward += rec.c_hat[v];
      }
    } else {
      result.failed = true;
    }

    costs.begin_iteration(inst.kappa[static_cast<std::size_t>(t - 1)]);
    const Collection collected = costs.apply_visits(rec.visited);
    for (int v = 1; v <= n; ++v) {
      if (rec.visited[v]) estimator.observe(v, collected.by_vertex[v], t);
    }
    rec.residual_cost = costs.residual_cost();
    result.total_cost += rec.residual_cost;
    result.iterations.push_back(std::move(rec));
  }

  result.mu_hat = VertexArray<double>(n, 0.0);
  for (int v = 1; v <= n; ++v) result.mu_hat[v] = estimator.mu_hat(v);
  return result;
}

double replay_cost(const Instance& inst, const std::vector<VertexArray<bool>>& visits) {
  const int n = inst.num_vertices();
  VertexArray<int> last_visit(n, 0);
  double total = 0.0;
  for (int t = 1; t <= static_cast<int>(visits.size()); ++t) {
    const auto& seen = visits[static_cast<std::size_t>(t - 1)];
    for (int v = 2; v <= n; ++v) {
      if (seen[v]) {
        last_visit[v] = t;
        continue;
      }
      for (int k = last_visit[v] + 1; k <= t; ++k) total += inst.kappa_at(v, k);
    }
  }
  return total;
}

}  // namespace tocpur
