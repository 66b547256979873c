#include "tocpur/plan.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <map>
#include <stdexcept>

namespace tocpur {

VertexArray<bool> FleetPlan::visited(int num_vertices) const {
  VertexArray<bool> out(num_vertices, false);
  out[kDepot] = true;
  for (const auto& route : routes) {
    for (int v : route) out[v] = true;
  }
  return out;
}

std::vector<int> FleetPlan::visited_vertices() const {
  std::vector<int> out{kDepot};
  for (const auto& route : routes) out.insert(out.end(), route.begin(), route.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double walk_length(const Graph& graph, const std::vector<int>& walk) {
  double total = 0.0;
  for (std::size_t k = 1; k < walk.size(); ++k) {
    const auto e = graph.find_edge(walk[k - 1], walk[k]);
    if (!e) throw std::invalid_argument(fmt::format("({},{}) is not an edge", walk[k - 1], walk[k]));
    total += graph.edge(*e).length;
  }
  return total;
}

FleetPlan make_plan(const Graph& graph, std::vector<std::vector<int>> routes) {
  FleetPlan plan;
  plan.routes = std::move(routes);
  for (const auto& r : plan.routes) plan.lengths.push_back(walk_length(graph, r));
  return plan;
}

std::optional<std::string> check_plan(const Graph& graph, const FleetPlan& plan, double l_max) {
  if (plan.lengths.size() != plan.routes.size()) return "lengths and routes disagree in count";
  for (std::size_t m = 0; m < plan.routes.size(); ++m) {
    const auto& route = plan.routes[m];
    if (route.empty() || route.front() != kDepot || route.back() != kDepot) {
      return fmt::format("route {} does not start and end at the depot", m);
    }
    double length = 0.0;
    try {
      length = walk_length(graph, route);
    } catch (const std::invalid_argument& e) {
      return fmt::format("route {}: {}", m, e.what());
    }
    if (std::abs(length - plan.lengths[m]) > 1e-6) return fmt::format("route {} length mismatch", m);
    if (length > l_max + 1e-6) return fmt::format("route {} exceeds the budget", m);
  }
  return std::nullopt;
}

bool is_edge_simple(const std::vector<int>& closed_walk) {
  std::map<std::pair<int, int>, int> count;
  for (std::size_t k = 1; k < closed_walk.size(); ++k) {
    if (++count[{closed_walk[k - 1], closed_walk[k]}] > 1) return false;
  }
  return true;
}

std::vector<int> remove_repeated_edges(const std::vector<int>& closed_walk) {
  if (closed_walk.size() < 2) return closed_walk;
  if (closed_walk.front() != closed_walk.back()) throw std::invalid_argument("walk is not closed");
  const int anchor = closed_walk.front();
  // Cyclic vertex sequence; edge t runs cyc[t] -> cyc[(t+1) % k].
  std::vector<int> cyc(closed_walk.begin(), closed_walk.end() - 1);

  while (true) {
    const std::size_t k = cyc.size();
    std::map<std::pair<int, int>, std::size_t> first_use;
    std::optional<std::pair<std::size_t, std::size_t>> doubled;
    for (std::size_t t = 0; t < k && !doubled; ++t) {
      const std::pair<int, int> e{cyc[t], cyc[(t + 1) % k]};
      const auto [it, inserted] = first_use.emplace(e, t);
      if (!inserted) doubled.emplace(it->second, t);
    }
    if (!doubled) break;

    // Rotate so the first copy of (i,j) is edge 0: c0 = i, c1 = j, and the
    // second copy is edge b. The loop c1..cb runs from j back to i.
    std::rotate(cyc.begin(), cyc.begin() + static_cast<std::ptrdiff_t>(doubled->first), cyc.end());
    const std::size_t b = doubled->second - doubled->first;
    std::vector<int> next;
    next.reserve(k - 2);
    for (std::size_t t = b; t >= 1; --t) next.push_back(cyc[t]);
    for (std::size_t t = b + 2; t < k; ++t) next.push_back(cyc[t]);
    cyc = std::move(next);
  }

  const auto it = std::find(cyc.begin(), cyc.end(), anchor);
  std::rotate(cyc.begin(), it, cyc.end());
  cyc.push_back(anchor);
  return cyc;
}

}  // namespace tocpur
