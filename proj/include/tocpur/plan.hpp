#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tocpur/graph.hpp"
#include "tocpur/vertex_array.hpp"

namespace tocpur {

/// One closed walk per agent. A route is either (1) for an agent that stays
/// at the depot, or (1, ..., 1) following graph edges.
struct FleetPlan {
  std::vector<std::vector<int>> routes;
  std::vector<double> lengths;

  int num_agents() const { return static_cast<int>(routes.size()); }
  /// Union of all route vertices plus the depot.
  VertexArray<bool> visited(int num_vertices) const;
  std::vector<int> visited_vertices() const;
};

/// Sum of edge lengths along `walk`; throws if a consecutive pair is not an edge.
double walk_length(const Graph& graph, const std::vector<int>& walk);

/// Builds a plan from routes, computing each length.
FleetPlan make_plan(const Graph& graph, std::vector<std::vector<int>> routes);

/// Structural check of a plan: depot endpoints, edges exist, lengths match and
/// fit the budget. Returns the first problem found.
std::optional<std::string> check_plan(const Graph& graph, const FleetPlan& plan, double l_max);

/// Removes repeated traversals of a directed edge from a closed walk. Each
/// step drops both copies of a doubled edge (i,j) and reverses the loop that
/// led from j back to i, so the visited vertex set is preserved and the walk
/// gets strictly shorter. The result starts and ends at the walk's first vertex.
std::vector<int> remove_repeated_edges(const std::vector<int>& closed_walk);

/// True when no directed edge appears twice in the closed walk.
bool is_edge_simple(const std::vector<int>& closed_walk);

}  // namespace tocpur
