#pragma once

#include "tocpur/graph.hpp"
#include "tocpur/plan.hpp"
#include "tocpur/tocp.hpp"

namespace tocpur {

/// Round-robin greedy planner. Each unfinished agent, in index order, moves
/// along a shortest path to the nearest affordable must-visit vertex, else to
/// the affordable vertex with the best c_hat / distance ratio, else home.
/// Every vertex passed on the way is cleared from both candidate pools.
/// Throws std::invalid_argument if a must-visit vertex has no affordable round trip.
FleetPlan greedy_plan(const PlanningInput& input, const DistanceMatrix& dist);

}  // namespace tocpur
