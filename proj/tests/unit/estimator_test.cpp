#include "tocpur/estimator.hpp"

#include <gtest/gtest.h>

#include "tocpur/cost_process.hpp"
#include "tocpur/graph.hpp"

namespace tocpur {
namespace {

TEST(EstimatorTest, FirstVisitGivesTheSingleSampleRate) {
  Estimator est(3, 0.5);
  est.observe(2, 1.5, 3);
  EXPECT_EQ(est.observed_total(2), 1.5);
  EXPECT_EQ(est.last_visit(2), 3);
  EXPECT_DOUBLE_EQ(est.mu_hat(2), 0.5);
}

TEST(EstimatorTest, UnvisitedVertexUsesTheDefault) {
  Estimator est(3, 0.3);
  EXPECT_EQ(est.mu_hat(3), 0.3);
  Estimator half(3, 0.5);
  EXPECT_DOUBLE_EQ(half.predicted_cost(4)[3], 2.0);
}

TEST(EstimatorTest, JustVisitedVertexPredictsNothing) {
  Estimator est(2, 0.5);
  est.observe(2, 0.8, 2);
  EXPECT_EQ(est.predicted_cost(2)[2], 0.0);
  EXPECT_DOUBLE_EQ(est.predicted_cost(5)[2], 0.4 * 3);
}

TEST(EstimatorTest, PredictionIsLinearInElapsedTime) {
  Estimator est(2, 0.5);
  est.observe(2, 1.2, 3);
  const double step = est.predicted_cost(5)[2] - est.predicted_cost(4)[2];
  for (int t = 4; t < 12; ++t) {
    EXPECT_NEAR(est.predicted_cost(t + 1)[2] - est.predicted_cost(t)[2], step, 1e-12);
  }
}

TEST(EstimatorTest, RejectsVisitsThatDoNotAdvance) {
  Estimator est(3, 0.5);
  est.observe(2, 1.0, 2);
  EXPECT_THROW(est.observe(2, 1.0, 2), std::invalid_argument);
  EXPECT_THROW(est.observe(2, 1.0, 1), std::invalid_argument);
  EXPECT_THROW(est.observe(2, -1.0, 4), std::invalid_argument);
  EXPECT_THROW(est.predicted_cost(0), std::invalid_argument);
}

// Scripted ten-iteration episode: vertex v is visited whenever t % v == 0.
TEST(EstimatorTest, ScriptedEpisodeMatchesTheLog) {
  constexpr int n = 5;
  GrowthParams params;
  params.mu_star = VertexArray<double>(std::vector<double>{0.5, 0.2, 0.4, 0.6, 0.8});
  params.noise_scale = 0.1;
  CostState state(n);
  Estimator est(n, 0.5);
  for (int t = 1; t <= 10; ++t) {
    state.begin_iteration(sample_growth(params, 5, t));
    VertexArray<bool> seen(n, false);
    seen[kDepot] = true;
    for (int v = 2; v <= n; ++v) seen[v] = t % v == 0;
    const Collection got = state.apply_visits(seen);
    for (int v = 1; v <= n; ++v) {
      if (seen[v]) est.observe(v, got.by_vertex[v], t);
    }
  }
  for (int v = 2; v <= n; ++v) {
    const int last = est.last_visit(v);
    ASSERT_GT(last, 0);
    double sum = 0.0;
    for (int k = 1; k <= last; ++k) sum += state.kappa(v, k);
    EXPECT_NEAR(est.mu_hat(v), sum / last, 1e-12) << "vertex " << v;
  }
}

TEST(EstimatorTest, ZeroNoisePredictionEqualsTrueAccruedCost) {
  constexpr int n = 4;
  GrowthParams params;
  params.mu_star = VertexArray<double>(std::vector<double>{0.5, 0.3, 0.7, 0.1});
  params.noise_scale = 0.0;
  CostState state(n);
  Estimator est(n, 0.5);
  for (int t = 1; t <= 6; ++t) {
    state.begin_iteration(sample_growth(params, 1, t));
    if (t >= 2) {
      // Every vertex has been seen at t = 1.
      const auto predicted = est.predicted_cost(t);
      for (int v = 2; v <= n; ++v) EXPECT_NEAR(predicted[v], state.accrued(v), 1e-12);
    }
    VertexArray<bool> seen(n, t == 1 || t % 2 == 0);
    seen[kDepot] = true;
    const Collection got = state.apply_visits(seen);
    for (int v = 1; v <= n; ++v) {
      if (seen[v]) est.observe(v, got.by_vertex[v], t);
    }
    for (int v = 2; v <= n; ++v) EXPECT_NEAR(est.mu_hat(v), params.mu_star[v], 1e-12);
  }
}

}  // namespace
}  // namespace tocpur
