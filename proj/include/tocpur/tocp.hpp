#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "tocpur/graph.hpp"
#include "tocpur/milp.hpp"
#include "tocpur/plan.hpp"
#include "tocpur/vertex_array.hpp"

namespace tocpur {

struct TocpOptions {
  /// Relax "every agent leaves the depot exactly once" to "at most once".
  bool allow_idle_agents = false;
  /// Replace u <= N x with u <= (N-1) x and u <= sum_j y_j (same optimum).
  bool tight_flow_bound = false;
};

/// Variable ids of a built model. Agents are indexed 0..M-1; x and u are
/// keyed by graph edge index.
struct VariableHandles {
  int num_vertices = 0;
  int num_agents = 0;
  int num_edges = 0;
  std::vector<int> x_ids;
  std::vector<int> u_ids;
  std::vector<int> y_ids;
  std::vector<int> z_ids;

  int x(int edge, int agent) const { return x_ids[static_cast<std::size_t>(edge * num_agents + agent)]; }
  int u(int edge, int agent) const { return u_ids[static_cast<std::size_t>(edge * num_agents + agent)]; }
  int y(int vertex, int agent) const {
    return y_ids[static_cast<std::size_t>((vertex - 1) * num_agents + agent)];
  }
  int z(int vertex) const { return z_ids[static_cast<std::size_t>(vertex - 1)]; }
};

struct RoutingModel {
  milp::MilpModel model;
  VariableHandles handles;
};

struct PlanningInput {
  const Graph& graph;
  const VertexArray<double>& c_hat;
  int num_agents = 1;
  double l_max = 0.0;
  std::vector<int> must_visit;
};

/// Team orienteering coverage MIP: closed walks that may revisit vertices.
RoutingModel build_tocp(const PlanningInput& input, const TocpOptions& options = {});

/// Classical team orienteering baseline: the coverage model plus "each
/// non-depot vertex is entered at most once across the fleet".
RoutingModel build_top(const PlanningInput& input, const TocpOptions& options = {});

/// Raised when a solver assignment does not decode into closed walks.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Stitches each agent's selected edges into one closed walk from the depot.
FleetPlan extract_routes(const std::vector<double>& assignment, const VariableHandles& handles,
                         const Graph& graph);

/// Reshapes an arbitrary plan into the model's route shape: routes leave the
/// depot once and use each directed edge at most once. A route that passes
/// through the depot is cut into depot loops, consecutive loops are joined by
/// depot-free detours while the budget allows, and the most valuable joined
/// walk is kept (covering must-visit vertices first). An empty route becomes
/// the shortest affordable out-and-back trip.
FleetPlan conform_plan(const Graph& graph, const FleetPlan& plan, const VertexArray<double>& c_hat,
                       double l_max, const std::vector<int>& must_visit = {});

/// Encodes a conforming plan as a full assignment (x, y, z, and a feasible
/// u-flow). Returns nullopt when a route repeats an edge or misses an edge.
std::optional<std::vector<double>> plan_to_assignment(const FleetPlan& plan, const VariableHandles& handles,
                                                      const Graph& graph);

}  // namespace tocpur
