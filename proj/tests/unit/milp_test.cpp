#include "tocpur/milp.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

namespace tocpur::milp {
namespace {

MilpSolution solve(const MilpModel& model, double time_limit = 30.0) {
  SolveOptions options;
  options.time_limit_seconds = time_limit;
  return BranchAndBoundSolver{}.solve(model, options);
}

TEST(MilpTest, SingleBinaryForcedToZero) {
  MilpModel m;
  const int x = m.add_binary("x");
  m.add_constraint("cap", {{x, 1.0}}, Relation::kLessEqual, 0.0);
  m.set_objective({{x, 1.0}}, Sense::kMaximize);
  const MilpSolution s = solve(m);
  EXPECT_EQ(s.status, SolveStatus::kOptimal);
  EXPECT_NEAR(s.assignment[0], 0.0, 1e-9);
  EXPECT_NEAR(s.objective_value, 0.0, 1e-9);
  EXPECT_EQ(s.gap, 0.0);
}

TEST(MilpTest, ContradictoryBoundsAreInfeasible) {
  MilpModel m;
  const int x = m.add_binary("x");
  m.add_constraint("lo", {{x, 1.0}}, Relation::kGreaterEqual, 1.0);
  m.add_constraint("hi", {{x, 1.0}}, Relation::kLessEqual, 0.0);
  m.set_objective({{x, 1.0}}, Sense::kMaximize);
  EXPECT_EQ(solve(m).status, SolveStatus::kInfeasible);
}

TEST(MilpTest, RejectsMalformedModels) {
  MilpModel dangling;
  dangling.add_binary("x");
  dangling.add_constraint("bad", {{3, 1.0}}, Relation::kLessEqual, 1.0);
  EXPECT_THROW(solve(dangling), std::invalid_argument);

  MilpModel unbounded;
  unbounded.add_continuous("y", 0.0, INFINITY);
  EXPECT_THROW(solve(unbounded), std::invalid_argument);
}

TEST(MilpTest, PureLpOptimum) {
  // max 3x + 2y  s.t. x + y <= 4, x + 3y <= 6, 0 <= x <= 3, 0 <= y <= 10
  MilpModel m;
  const int x = m.add_continuous("x", 0.0, 3.0);
  const int y = m.add_continuous("y", 0.0, 10.0);
  m.add_constraint("a", {{x, 1.0}, {y, 1.0}}, Relation::kLessEqual, 4.0);
  m.add_constraint("b", {{x, 1.0}, {y, 3.0}}, Relation::kLessEqual, 6.0);
  m.set_objective({{x, 3.0}, {y, 2.0}}, Sense::kMaximize);
  const MilpSolution s = solve(m);
  ASSERT_EQ(s.status, SolveStatus::kOptimal);
  EXPECT_NEAR(s.objective_value, 11.0, 1e-9);
  EXPECT_NEAR(s.assignment[0], 3.0, 1e-9);
  EXPECT_NEAR(s.assignment[1], 1.0, 1e-9);
}

TEST(MilpTest, MinimizationWithEqualities) {
  // min x + 2y + 3z  s.t.  x + y + z = 2, y - z >= 0, all binary
  MilpModel m;
  const int x = m.add_binary("x");
  const int y = m.add_binary("y");
  const int z = m.add_binary("z");
  m.add_constraint("sum", {{x, 1}, {y, 1}, {z, 1}}, Relation::kEqual, 2.0);
  m.add_constraint("order", {{y, 1}, {z, -1}}, Relation::kGreaterEqual, 0.0);
  m.set_objective({{x, 1}, {y, 2}, {z, 3}}, Sense::kMinimize);
  const MilpSolution s = solve(m);
  ASSERT_EQ(s.status, SolveStatus::kOptimal);
  EXPECT_NEAR(s.objective_value, 3.0, 1e-9);
}

double knapsack_enumerate(const std::vector<double>& value, const std::vector<double>& weight, double cap) {
  const int n = static_cast<int>(value.size());
  double best = 0.0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    double v = 0.0;
    double w = 0.0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        v += value[static_cast<std::size_t>(i)];
        w += weight[static_cast<std::size_t>(i)];
      }
    }
    if (w <= cap && v > best) best = v;
  }
  return best;
}

TEST(MilpTest, KnapsackMatchesFullEnumeration) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(1.0, 10.0);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<double> value(8), weight(8);
    for (int i = 0; i < 8; ++i) {
      value[static_cast<std::size_t>(i)] = u(rng);
      weight[static_cast<std::size_t>(i)] = u(rng);
    }
    const double cap = 18.0 + trial * 0.5;
    MilpModel m;
    std::vector<Term> obj, row;
    for (int i = 0; i < 8; ++i) {
      const int v = m.add_binary("x" + std::to_string(i));
      obj.push_back({v, value[static_cast<std::size_t>(i)]});
      row.push_back({v, weight[static_cast<std::size_t>(i)]});
    }
    m.add_constraint("cap", row, Relation::kLessEqual, cap);
    m.set_objective(obj, Sense::kMaximize);
    const MilpSolution s = solve(m);
    ASSERT_EQ(s.status, SolveStatus::kOptimal);
    EXPECT_NEAR(s.objective_value, knapsack_enumerate(value, weight, cap), 1e-9) << "trial " << trial;
    EXPECT_LE(m.max_violation(s.assignment), 1e-6);
  }
}

TEST(MilpTest, MultiKnapsackMatchesEnumeration) {
  // Two capacity rows plus a cardinality row, mixing relation kinds.
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(1.0, 10.0);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 10;
    std::vector<double> value(n), w1(n), w2(n);
    for (int i = 0; i < n; ++i) {
      value[static_cast<std::size_t>(i)] = u(rng);
      w1[static_cast<std::size_t>(i)] = u(rng);
      w2[static_cast<std::size_t>(i)] = u(rng);
    }
    MilpModel m;
    std::vector<Term> obj, r1, r2, card;
    for (int i = 0; i < n; ++i) {
      const int v = m.add_binary("x" + std::to_string(i));
      obj.push_back({v, value[static_cast<std::size_t>(i)]});
      r1.push_back({v, w1[static_cast<std::size_t>(i)]});
      r2.push_back({v, w2[static_cast<std::size_t>(i)]});
      card.push_back({v, 1.0});
    }
    m.add_constraint("w1", r1, Relation::kLessEqual, 25.0);
    m.add_constraint("w2", r2, Relation::kLessEqual, 25.0);
    m.add_constraint("card", card, Relation::kGreaterEqual, 2.0);
    m.set_objective(obj, Sense::kMaximize);

    double best = -1.0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      double v = 0, a = 0, b = 0;
      int c = 0;
      for (int i = 0; i < n; ++i) {
        if (!(mask & (1u << i))) continue;
        v += value[static_cast<std::size_t>(i)];
        a += w1[static_cast<std::size_t>(i)];
        b += w2[static_cast<std::size_t>(i)];
        ++c;
      }
      if (a <= 25.0 && b <= 25.0 && c >= 2) best = std::max(best, v);
    }
    const MilpSolution s = solve(m);
    if (best < 0) {
      EXPECT_EQ(s.status, SolveStatus::kInfeasible);
    } else {
      ASSERT_EQ(s.status, SolveStatus::kOptimal);
      EXPECT_NEAR(s.objective_value, best, 1e-9);
    }
  }
}

TEST(MilpTest, WarmStartIsUsedAndNeverWorsensTheOptimum) {
  MilpModel m;
  std::vector<Term> obj, row;
  for (int i = 0; i < 6; ++i) {
    const int v = m.add_binary("x" + std::to_string(i));
    obj.push_back({v, 1.0 + i});
    row.push_back({v, 2.0 + (i % 3)});
  }
  m.add_constraint("cap", row, Relation::kLessEqual, 7.0);
  m.set_objective(obj, Sense::kMaximize);
  SolveOptions options;
  options.initial_incumbent = std::vector<double>{1, 0, 0, 0, 0, 0};
  const MilpSolution warm = BranchAndBoundSolver{}.solve(m, options);
  const MilpSolution cold = solve(m);
  EXPECT_EQ(warm.status, SolveStatus::kOptimal);
  EXPECT_NEAR(warm.objective_value, cold.objective_value, 1e-9);

  // Zero time budget: only the warm start is available.
  options.time_limit_seconds = 0.0;
  const MilpSolution rushed = BranchAndBoundSolver{}.solve(m, options);
  EXPECT_EQ(rushed.status, SolveStatus::kFeasibleTimeout);
  EXPECT_NEAR(rushed.objective_value, 1.0, 1e-12);
  EXPECT_GE(rushed.gap, 0.0);

  options.initial_incumbent.reset();
  EXPECT_EQ(BranchAndBoundSolver{}.solve(m, options).status, SolveStatus::kTimeoutNoSolution);
}

TEST(MilpTest, InfeasibleWarmStartIsIgnored) {
  MilpModel m;
  const int x = m.add_binary("x");
  m.add_constraint("cap", {{x, 1.0}}, Relation::kLessEqual, 0.0);
  m.set_objective({{x, 1.0}}, Sense::kMaximize);
  SolveOptions options;
  options.initial_incumbent = std::vector<double>{1.0};
  const MilpSolution s = BranchAndBoundSolver{}.solve(m, options);
  EXPECT_EQ(s.status, SolveStatus::kOptimal);
  EXPECT_NEAR(s.objective_value, 0.0, 1e-12);
}

TEST(MilpTest, LpDumpListsEverySection) {
  MilpModel m;
  const int x = m.add_binary("x");
  const int u = m.add_continuous("u", 0.0, 4.0);
  m.add_constraint("link", {{u, 1.0}, {x, -4.0}}, Relation::kLessEqual, 0.0);
  m.set_objective({{x, 2.5}}, Sense::kMaximize);
  std::ostringstream out;
  write_lp(m, out);
  const std::string text = out.str();
  EXPECT_NE(text.find("Maximize"), std::string::npos);
  EXPECT_NE(text.find("link: 1 u - 4 x <= 0"), std::string::npos);
  EXPECT_NE(text.find("0 <= u <= 4"), std::string::npos);
  EXPECT_NE(text.find("Binaries\n x\n"), std::string::npos);
  EXPECT_NE(text.find("End"), std::string::npos);
}

}  // namespace
}  // namespace tocpur::milp
