#include "tocpur/greedy.hpp"

#include <fmt/format.h>
#include <stdexcept>

namespace tocpur {
namespace {

struct AgentState {
  int position = kDepot;
  double spent = 0.0;
  bool finished = false;
  std::vector<int> route{kDepot};
};

}  // namespace

FleetPlan greedy_plan(const PlanningInput& in, const DistanceMatrix& dist) {
  const Graph& g = in.graph;
  const int n = g.num_vertices();
  if (in.num_agents < 1) throw std::invalid_argument("fleet needs at least one agent");
  if (in.c_hat.size() != n) throw std::invalid_argument("c_hat size mismatch");

  VertexArray<bool> must(n, false);
  VertexArray<bool> optional(n, false);
  for (int v : in.must_visit) {
    if (dist(kDepot, v) + dist(v, kDepot) > in.l_max) {
      throw std::invalid_argument(fmt::format("must-visit vertex {} has no affordable round trip", v));
    }
    must[v] = true;
  }
  for (int v = 2; v <= n; ++v) optional[v] = !must[v];
  must[kDepot] = false;

  std::vector<AgentState> agents(static_cast<std::size_t>(in.num_agents));
  int unfinished = in.num_agents;
  while (unfinished > 0) {
    for (AgentState& a : agents) {
      if (a.finished) continue;
      const auto affordable = [&](int v) {
        return a.spent + dist(a.position, v) + dist(v, kDepot) <= in.l_max;
      };

      int target = 0;
      for (int v = 1; v <= n; ++v) {
        if (!must[v] || !affordable(v)) continue;
        if (target == 0 || dist(a.position, v) < dist(a.position, target)) target = v;
      }
      if (target == 0) {
        double best_ratio = 0.0;
        for (int v = 1; v <= n; ++v) {
          if (!optional[v] || in.c_hat[v] <= 0.0 || !affordable(v)) continue;
          const double d = dist(a.position, v);
          if (d == 0.0) {
            target = v;
            break;
          }
          const double ratio = in.c_hat[v] / d;
          if (ratio > best_ratio) {
            best_ratio = ratio;
            target = v;
          }
        }
      }
      if (target == 0) {
        target = kDepot;
        a.finished = true;
        --unfinished;
      }

      a.spent += dist(a.position, target);
      const std::vector<int> path = shortest_path(g, dist, a.position, target);
      for (int v : path) {
        must[v] = false;
        optional[v] = false;
      }
      a.route.insert(a.route.end(), path.begin() + 1, path.end());
      a.position = target;
    }
  }

  FleetPlan plan;
  for (AgentState& a : agents) {
    plan.routes.push_back(std::move(a.route));
    plan.lengths.push_back(walk_length(g, plan.routes.back()));
  }
  return plan;
}

}  // namespace tocpur
