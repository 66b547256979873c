#include "tocpur/cost_process.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "tocpur/graph.hpp"

namespace tocpur {
namespace {

GrowthParams uniform_params(int n, double mu, double noise) {
  GrowthParams p;
  p.mu_star = VertexArray<double>(n, mu);
  p.noise_scale = noise;
  return p;
}

VertexArray<bool> visit_set(int n, std::initializer_list<int> vertices) {
  VertexArray<bool> seen(n, false);
  seen[kDepot] = true;
  for (int v : vertices) seen[v] = true;
  return seen;
}

TEST(SampleGrowthTest, ZeroNoiseReturnsTheRate) {
  const auto kappa = sample_growth(uniform_params(4, 0.5, 0.0), 7, 1);
  for (double k : kappa) EXPECT_EQ(k, 0.5);
}

TEST(SampleGrowthTest, ClipsToTheWindow) {
  const auto high = sample_growth(uniform_params(3, 1.5, 0.0), 7, 1);
  for (double k : high) EXPECT_EQ(k, 1.0);
  const auto low = sample_growth(uniform_params(3, -0.5, 0.0), 7, 1);
  for (double k : low) EXPECT_EQ(k, 0.0);
}

TEST(SampleGrowthTest, SampleMeanMatchesTheRate) {
  // 10^5 draws split into single-vertex streams and iterations.
  constexpr int kVertices = 100;
  constexpr int kIterations = 1000;
  const GrowthParams params = uniform_params(kVertices, 0.5, 0.1);
  double sum = 0.0;
  for (int t = 1; t <= kIterations; ++t) {
    for (double k : sample_growth(params, 11, t)) sum += k;
  }
  const double n = static_cast<double>(kVertices) * kIterations;
  EXPECT_NEAR(sum / n, 0.5, 3.0 * 0.1 / std::sqrt(n));
}

TEST(SampleGrowthTest, DeterministicPerStreamAndIteration) {
  const GrowthParams params = uniform_params(6, 0.4, 0.1);
  EXPECT_EQ(sample_growth(params, 3, 2), sample_growth(params, 3, 2));
  EXPECT_NE(sample_growth(params, 3, 2), sample_growth(params, 3, 3));
  EXPECT_NE(sample_growth(params, 3, 2), sample_growth(params, 4, 2));
}

TEST(SampleGrowthTest, RejectsBadArguments) {
  EXPECT_THROW(sample_growth(uniform_params(3, 0.5, 0.1), 1, 0), std::invalid_argument);
  GrowthParams p = uniform_params(3, 0.5, -0.1);
  EXPECT_THROW(sample_growth(p, 1, 1), std::invalid_argument);
}

TEST(CostStateTest, FullVisitClearsEverything) {
  CostState state(4);
  state.begin_iteration(VertexArray<double>(4, 0.7));
  const Collection got = state.apply_visits(visit_set(4, {2, 3, 4}));
  EXPECT_DOUBLE_EQ(got.total, 0.7 * 3);  // the depot collects nothing
  EXPECT_EQ(state.residual_cost(), 0.0);
}

TEST(CostStateTest, UnvisitedVertexAccumulatesLinearly) {
  CostState state(2);
  double total = 0.0;
  for (int t = 1; t <= 2; ++t) {
    state.begin_iteration(VertexArray<double>(2, 1.0));
    state.apply_visits(visit_set(2, {}));
    total += state.residual_cost();
  }
  EXPECT_EQ(state.accrued(2), 2.0);
  EXPECT_EQ(total, 3.0);
}

TEST(CostStateTest, DepotNeverCounts) {
  CostState state(3);
  state.begin_iteration(VertexArray<double>(3, 1.0));
  state.apply_visits(visit_set(3, {}));
  EXPECT_EQ(state.residual_cost(), 2.0);
}

TEST(CostStateTest, RequiresTheDepotInEveryVisitSet) {
  CostState state(3);
  state.begin_iteration(VertexArray<double>(3, 1.0));
  EXPECT_THROW(state.apply_visits(VertexArray<bool>(3, false)), std::invalid_argument);
}

TEST(CostStateTest, SecondApplicationChangesNothing) {
  CostState state(4);
  state.begin_iteration(VertexArray<double>(std::vector<double>{0.1, 0.2, 0.3, 0.4}));
  const auto visits = visit_set(4, {3});
  state.apply_visits(visits);
  const double residual = state.residual_cost();
  const Collection again = state.apply_visits(visits);
  EXPECT_EQ(again.total, 0.0);
  EXPECT_EQ(state.residual_cost(), residual);
}

TEST(CostStateTest, AccruedMatchesTheLogUnderRandomVisits) {
  std::mt19937_64 rng(99);
  std::bernoulli_distribution coin(0.4);
  for (int trial = 0; trial < 50; ++trial) {
    constexpr int n = 7;
    CostState state(n);
    GrowthParams params = uniform_params(n, 0.5, 0.2);
    for (int t = 1; t <= 5; ++t) {
      state.begin_iteration(sample_growth(params, static_cast<std::uint64_t>(trial), t));
      VertexArray<bool> seen(n, false);
      seen[kDepot] = true;
      for (int v = 2; v <= n; ++v) seen[v] = coin(rng);
      state.apply_visits(seen);
      double direct_residual = 0.0;
      for (int v = 1; v <= n; ++v) {
        double direct = 0.0;
        for (int k = state.last_visit(v) + 1; k <= t; ++k) direct += state.kappa(v, k);
        EXPECT_NEAR(state.accrued(v), direct, 1e-12);
        EXPECT_NEAR(state.accrued_from_log(v), direct, 1e-12);
        if (v != kDepot) direct_residual += direct;
      }
      EXPECT_NEAR(state.residual_cost(), direct_residual, 1e-12);
    }
  }
}

TEST(CostStateTest, ZeroNoiseWithoutVisitsGrowsAtTheRate) {
  GrowthParams params;
  params.mu_star = VertexArray<double>(std::vector<double>{0.25, 0.5, 0.75});
  params.noise_scale = 0.0;
  CostState state(3);
  for (int t = 1; t <= 8; ++t) {
    state.begin_iteration(sample_growth(params, 1, t));
    state.apply_visits(visit_set(3, {}));
  }
  EXPECT_EQ(state.accrued(2), 0.5 * 8);
  EXPECT_EQ(state.accrued(3), 0.75 * 8);
}

}  // namespace
}  // namespace tocpur
