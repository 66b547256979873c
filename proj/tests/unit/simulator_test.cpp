#include "tocpur/simulator.hpp"

#include <gtest/gtest.h>

#include "../support/instances.hpp"
#include "tocpur/benchgen.hpp"
#include "tocpur/oracle.hpp"

namespace tocpur {
namespace {

using testing::SmallCase;

std::vector<VertexArray<bool>> visit_log(const EpisodeResult& ep) {
  std::vector<VertexArray<bool>> log;
  for (const auto& it : ep.iterations) log.push_back(it.visited);
  return log;
}

TEST(SimulatorTest, SingleIterationCostMatchesTheCoverageOracle) {
  constexpr double kRate = 0.3;
  for (std::uint64_t seed = 200; seed < 215; ++seed) {
    const SmallCase c = testing::random_small_case(seed, 6, 2);
    const int n = c.graph.num_vertices();
    const Instance inst = testing::constant_rate_instance(c, std::vector<double>(static_cast<std::size_t>(n), kRate), 1);
    const EpisodeResult ep = run_episode(inst, Planner::kTocp);

    // The first prediction is the default rate everywhere, so the optimum
    // covers as many vertices as possible.
    SmallCase uniform = c;
    uniform.c_hat = VertexArray<double>(n, inst.mu_default);
    const auto best = oracle::brute_force_single_iteration(uniform.input());
    if (!best) {
      EXPECT_TRUE(ep.failed);
      continue;
    }
    const double covered = best->reward / inst.mu_default;
    EXPECT_NEAR(ep.total_cost, kRate * (n - 1 - covered), 1e-9) << "seed " << seed;
  }
}

TEST(SimulatorTest, OptimalPlannerBeatsGreedyWhenGreedyStaysInShape) {
  int compared = 0;
  for (std::uint64_t seed = 300; seed < 340; ++seed) {
    const SmallCase c = testing::random_small_case(seed, 6, 2);
    const int n = c.graph.num_vertices();
    std::vector<double> rates(static_cast<std::size_t>(n));
    for (int v = 1; v <= n; ++v) rates[static_cast<std::size_t>(v - 1)] = 0.1 * v;
    const Instance inst = testing::constant_rate_instance(c, rates, 1);
    const EpisodeResult greedy = run_episode(inst, Planner::kGreedy);
    if (greedy.failed) continue;
    // Greedy may pass back through the depot mid-route, leave an agent at
    // home, or skip must-visit vertices when they outnumber the agents;
    // none of that is allowed in the model, so only comparable plans count.
    bool single_loops = true;
    for (const auto& route : greedy.iterations[0].plan->routes) {
      single_loops = single_loops && route.size() > 1 && std::count(route.begin(), route.end(), kDepot) == 2;
    }
    for (int v : c.must_visit) single_loops = single_loops && greedy.iterations[0].visited[v];
    if (!single_loops) continue;
    const EpisodeResult tocp = run_episode(inst, Planner::kTocp);
    ASSERT_FALSE(tocp.failed) << "seed " << seed;
    EXPECT_LE(tocp.total_cost, greedy.total_cost + 1e-9) << "seed " << seed;
    ++compared;
  }
  EXPECT_GT(compared, 10);
}

TEST(SimulatorTest, GreedyCanOutscoreTheSingleLoopModel) {
  Graph g(3);
  g.add_symmetric_edge(1, 2, 1.0);
  g.add_symmetric_edge(1, 3, 1.0);
  SmallCase c;
  c.graph = g;
  c.l_max = 4.0;
  const Instance inst = testing::constant_rate_instance(c, {0.0, 1.0, 1.0}, 1);
  EXPECT_EQ(run_episode(inst, Planner::kGreedy).total_cost, 0.0);
  EXPECT_EQ(run_episode(inst, Planner::kTocp).total_cost, 1.0);
}

TEST(SimulatorTest, BridgeInstanceHurtsTheBaseline) {
  const SmallCase c = testing::bridge_case();
  const Instance inst = testing::constant_rate_instance(c, {0.0, 0.2, 0.4, 0.6, 0.8}, 2);
  const EpisodeResult tocp = run_episode(inst, Planner::kTocp);
  const EpisodeResult top = run_episode(inst, Planner::kTop);
  EXPECT_FALSE(tocp.failed);
  EXPECT_FALSE(top.failed);
  EXPECT_GT(top.total_cost, tocp.total_cost);
}

TEST(SimulatorTest, StreamedCostMatchesReplay) {
  const BenchmarkConfig config;
  for (std::uint64_t seed : {2u, 7u, 15u}) {
    const Instance inst = generate_instance(config, seed, 4);
    for (Planner p : {Planner::kGreedy, Planner::kTocp}) {
      EpisodeOptions options;
      options.time_limit_seconds = 20.0;
      const EpisodeResult ep = run_episode(inst, p, options);
      EXPECT_NEAR(replay_cost(inst, visit_log(ep)), ep.total_cost, 1e-9);
      double sum = 0.0;
      for (const auto& it : ep.iterations) sum += it.residual_cost;
      EXPECT_EQ(sum, ep.total_cost);
    }
  }
}

TEST(SimulatorTest, RepeatedRunsAgree) {
  const Instance inst = generate_instance(BenchmarkConfig{}, 8, 4);
  for (Planner p : {Planner::kGreedy, Planner::kTocp}) {
    const EpisodeResult a = run_episode(inst, p);
    const EpisodeResult b = run_episode(inst, p);
    EXPECT_EQ(a.total_cost, b.total_cost);
    EXPECT_EQ(a.mu_hat, b.mu_hat);
  }
}

TEST(SimulatorTest, ZeroNoiseRecoversRatesAfterTheFirstVisit) {
  Instance inst = generate_instance(BenchmarkConfig{}, 12, 4);
  inst.noise_stddev = 0.0;
  for (auto& row : inst.kappa) row = inst.mu_star;
  const EpisodeResult ep = run_episode(inst, Planner::kGreedy);
  for (int v = 2; v <= inst.num_vertices(); ++v) {
    bool seen = false;
    for (const auto& it : ep.iterations) seen = seen || it.visited[v];
    if (seen) {
      EXPECT_NEAR(ep.mu_hat[v], inst.mu_star[v], 1e-12) << "vertex " << v;
    } else {
      EXPECT_EQ(ep.mu_hat[v], inst.mu_default);
    }
  }
}

TEST(SimulatorTest, UnservableIterationStaysHome) {
  // The only must-visit vertex costs more than the budget to reach.
  SmallCase c;
  c.graph = Graph(3);
  c.graph.add_symmetric_edge(1, 2, 1.0);
  c.graph.add_symmetric_edge(2, 3, 5.0);
  c.l_max = 4.0;
  c.must_visit = {3};
  const Instance inst = testing::constant_rate_instance(c, {0.0, 0.5, 0.5}, 2);
  for (Planner p : {Planner::kTocp, Planner::kTop, Planner::kGreedy}) {
    const EpisodeResult ep = run_episode(inst, p);
    EXPECT_TRUE(ep.failed) << to_string(p);
    for (const auto& it : ep.iterations) {
      EXPECT_FALSE(it.plan.has_value());
      EXPECT_TRUE(it.visited[kDepot]);
      EXPECT_FALSE(it.visited[2]);
    }
    EXPECT_DOUBLE_EQ(ep.total_cost, 1.0 + 2.0);
  }
}

TEST(SimulatorTest, StopsAtTheRequestedIteration) {
  const Instance inst = generate_instance(BenchmarkConfig{}, 4, 6);
  EpisodeOptions options;
  options.last_iteration = 3;
  const EpisodeResult ep = run_episode(inst, Planner::kGreedy, options);
  ASSERT_EQ(ep.iterations.size(), 3u);
  EXPECT_EQ(ep.iterations.back().t, 3);
  options.last_iteration = 7;
  EXPECT_THROW(run_episode(inst, Planner::kGreedy, options), std::invalid_argument);
}

TEST(SimulatorTest, ReportsModelSize) {
  const Instance inst = generate_instance(BenchmarkConfig{}, 7, 2);
  const EpisodeResult ep = run_episode(inst, Planner::kTocp);
  for (const auto& it : ep.iterations) {
    EXPECT_GT(it.model_variables, 0);
    EXPECT_GT(it.model_constraints, 0);
    EXPECT_GE(it.compute_seconds, 0.0);
  }
}

TEST(PlannerNameTest, RoundTrips) {
  for (Planner p : {Planner::kTocp, Planner::kTop, Planner::kGreedy}) EXPECT_EQ(parse_planner(to_string(p)), p);
  EXPECT_FALSE(parse_planner("dijkstra").has_value());
}

}  // namespace
}  // namespace tocpur
