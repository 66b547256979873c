#pragma once

#include <string>
#include <vector>

#include "tocpur/instance.hpp"
#include "tocpur/io.hpp"
#include "tocpur/plan.hpp"

namespace tocpur {

/// Draws the graph, depot, must-visit vertices and, when given, one colored
/// route per agent. Instances without positions are laid out on a circle.
std::string render_instance_svg(const Instance& instance, const FleetPlan* plan = nullptr);

/// Mean total cost against horizon, one curve per planner, over the
/// all-solved subset of the rows.
std::string render_cost_curves_svg(const std::vector<ResultRow>& rows);

}  // namespace tocpur
