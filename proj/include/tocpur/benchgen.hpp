#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "tocpur/instance.hpp"

namespace tocpur {

struct BenchmarkConfig {
  std::uint64_t first_seed = 1;
  std::uint64_t last_seed = 120;
  std::vector<int> horizons{2, 4, 6, 8, 10};
  std::vector<int> vertex_counts{10, 12, 14, 16, 18, 20};
  double half_width = 5.0;
  std::vector<int> neighbor_counts{3, 4, 5};
  double l_max_base = 20.0;
  /// l_max ~ U(base, base + l_max_per_vertex * N).
  double l_max_per_vertex = 2.0;
  std::vector<int> agent_counts{2, 3, 4, 5};
  std::vector<int> must_visit_counts{1, 2, 3};
  double mu_lo = 0.1;
  double mu_hi = 0.9;
  double noise_stddev = 0.1;
  double mu_default = 0.5;
};

/// Added to the seed when a draw cannot supply enough must-visit candidates.
inline constexpr std::uint64_t kSeedEscalation = 1'000'000;
/// Draws attempted per seed before generation gives up.
inline constexpr int kMaxEscalations = 1000;

/// Draws one benchmark instance. The graph, fleet, budget, rates and
/// must-visit set depend only on the seed; growth for iteration t depends on
/// (seed, t), so instances for different horizons share their prefix.
Instance generate_instance(const BenchmarkConfig& config, std::uint64_t seed, int horizon);

/// Mirrors every edge and drops duplicates. Lengths are Euclidean distances
/// computed once per unordered pair.
Graph symmetrize_nearest(const VertexArray<Point>& positions,
                         const std::vector<std::vector<int>>& neighbor_lists);

/// Each vertex's k nearest other vertices (ties to the lower index).
std::vector<int> nearest_vertices(const VertexArray<Point>& positions, int vertex, int k);

std::filesystem::path suite_file(const std::filesystem::path& root, int horizon, std::uint64_t seed);

/// Writes suite/H{H}/seed{seed}.json for every seed and horizon. Throws if
/// the directory already holds instance files and `force` is false.
std::vector<std::filesystem::path> generate_suite(const BenchmarkConfig& config, const std::filesystem::path& root,
                                                  bool force = false);

}  // namespace tocpur
