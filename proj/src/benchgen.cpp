#include "tocpur/benchgen.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <random>
#include <set>
#include <stdexcept>

#include "tocpur/cost_process.hpp"
#include "tocpur/io.hpp"

namespace tocpur {
namespace {

template <typename T>
T pick(std::mt19937_64& rng, const std::vector<T>& choices) {
  std::uniform_int_distribution<std::size_t> index(0, choices.size() - 1);
  return choices[index(rng)];
}

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

void check_config(const BenchmarkConfig& c) {
  if (c.first_seed < 1 || c.last_seed < c.first_seed) throw std::invalid_argument("seed range must start at 1 or later");
  if (c.vertex_counts.empty() || c.neighbor_counts.empty() || c.agent_counts.empty() || c.must_visit_counts.empty()) {
    throw std::invalid_argument("benchmark choice lists must be nonempty");
  }
  for (int h : c.horizons) {
    if (h < 1) throw std::invalid_argument("horizons must be positive");
  }
  if (c.mu_lo > c.mu_hi || c.noise_stddev < 0.0 || c.half_width <= 0.0) {
    throw std::invalid_argument("invalid benchmark parameters");
  }
}

}  // namespace

std::vector<int> nearest_vertices(const VertexArray<Point>& positions, int vertex, int k) {
  std::vector<int> others;
  for (int v = 1; v <= positions.size(); ++v) {
    if (v != vertex) others.push_back(v);
  }
  const Point& p = positions[vertex];
  std::stable_sort(others.begin(), others.end(),
                   [&](int a, int b) { return distance(p, positions[a]) < distance(p, positions[b]); });
  others.resize(std::min<std::size_t>(others.size(), static_cast<std::size_t>(std::max(k, 0))));
  return others;
}

Graph symmetrize_nearest(const VertexArray<Point>& positions, const std::vector<std::vector<int>>& neighbor_lists) {
  std::set<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < neighbor_lists.size(); ++i) {
    const int from = static_cast<int>(i) + 1;
    for (int to : neighbor_lists[i]) pairs.emplace(std::min(from, to), std::max(from, to));
  }
  Graph g(positions.size());
  for (const auto& [a, b] : pairs) g.add_symmetric_edge(a, b, distance(positions[a], positions[b]));
  g.set_positions(positions);
  return g;
}

Instance generate_instance(const BenchmarkConfig& config, std::uint64_t seed, int horizon) {
  check_config(config);
  if (horizon < 1) throw std::invalid_argument("horizon must be positive");

  for (int attempt = 0; attempt < kMaxEscalations; ++attempt) {
    const std::uint64_t draw_seed = seed + static_cast<std::uint64_t>(attempt) * kSeedEscalation;
    std::seed_seq seq{static_cast<std::uint32_t>(draw_seed), static_cast<std::uint32_t>(draw_seed >> 32),
                      0x67726170u};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> coord(-config.half_width, config.half_width);

    Instance inst;
    inst.seed = seed;
    inst.generator_seed = draw_seed;
    inst.horizon = horizon;
    inst.id = fmt::format("H{}_seed{}", horizon, seed);
    inst.mu_default = config.mu_default;
    inst.noise_stddev = config.noise_stddev;

    const int n = pick(rng, config.vertex_counts);
    VertexArray<Point> positions(n, Point{});
    for (int v = 2; v <= n; ++v) {
      const double x = coord(rng);
      positions[v] = Point{x, coord(rng)};
    }
    std::vector<std::vector<int>> neighbors;
    for (int v = 1; v <= n; ++v) neighbors.push_back(nearest_vertices(positions, v, pick(rng, config.neighbor_counts)));
    inst.graph = symmetrize_nearest(positions, neighbors);

    std::uniform_real_distribution<double> budget(config.l_max_base,
                                                  config.l_max_base + config.l_max_per_vertex * n);
    inst.l_max = budget(rng);
    inst.num_agents = pick(rng, config.agent_counts);
    const int must_count = std::min(pick(rng, config.must_visit_counts), inst.num_agents);

    std::uniform_real_distribution<double> rate(config.mu_lo, config.mu_hi);
    inst.mu_star = VertexArray<double>(n, 0.0);
    for (int v = 1; v <= n; ++v) inst.mu_star[v] = rate(rng);

    std::vector<int> candidates = reachable_round_trip(all_pairs_shortest(inst.graph), inst.l_max);
    candidates.erase(std::remove(candidates.begin(), candidates.end(), kDepot), candidates.end());
    if (static_cast<int>(candidates.size()) < must_count) continue;
    std::sample(candidates.begin(), candidates.end(), std::back_inserter(inst.must_visit), must_count, rng);

    const GrowthParams growth{inst.mu_star, config.noise_stddev, 0.0, 1.0};
    for (int t = 1; t <= horizon; ++t) inst.kappa.push_back(sample_growth(growth, draw_seed, t));
    return inst;
  }
  throw std::runtime_error(fmt::format("seed {}: no draw supplies enough must-visit candidates", seed));
}

std::filesystem::path suite_file(const std::filesystem::path& root, int horizon, std::uint64_t seed) {
  return root / fmt::format("H{}", horizon) / fmt::format("seed{}.json", seed);
}

std::vector<std::filesystem::path> generate_suite(const BenchmarkConfig& config, const std::filesystem::path& root,
                                                  bool force) {
  check_config(config);
  if (!force && std::filesystem::exists(root)) {
    for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") {
        throw std::runtime_error(fmt::format("{} already contains instance files; refusing to overwrite", root.string()));
      }
    }
  }
  std::vector<std::filesystem::path> written;
  for (int h : config.horizons) {
    std::filesystem::create_directories(root / fmt::format("H{}", h));
    for (std::uint64_t seed = config.first_seed; seed <= config.last_seed; ++seed) {
      const auto path = suite_file(root, h, seed);
      write_instance(generate_instance(config, seed, h), path);
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace tocpur
