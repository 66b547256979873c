#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tocpur/cost_process.hpp"
#include "tocpur/graph.hpp"

namespace tocpur {

/// A complete patrol problem: graph, fleet, budget, must-visit set, and the
/// realized growth kappa for every vertex and iteration 1..horizon.
struct Instance {
  int version = 1;
  std::string id;
  std::uint64_t seed = 0;
  /// Seed actually used to draw the instance (differs from `seed` after escalation).
  std::uint64_t generator_seed = 0;
  int horizon = 1;
  Graph graph;
  int num_agents = 1;
  double l_max = 0.0;
  std::vector<int> must_visit;
  VertexArray<double> mu_star;
  double mu_default = 0.5;
  double noise_stddev = 0.1;
  /// kappa[t-1][v]: growth realized right before iteration t.
  std::vector<VertexArray<double>> kappa;

  int num_vertices() const { return graph.num_vertices(); }
  double kappa_at(int vertex, int t) const { return kappa[static_cast<std::size_t>(t - 1)][vertex]; }

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// First structural problem with the instance, or nullopt.
std::optional<std::string> check_instance(const Instance& instance);

}  // namespace tocpur
