#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <queue>
#include <stdexcept>

#include "dense_simplex.hpp"
#include "tocpur/milp.hpp"

namespace tocpur::milp {
namespace {

using detail::Clock;
using detail::DenseSimplex;
using detail::LpData;
using detail::LpStatus;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct BranchRecord {
  std::shared_ptr<const BranchRecord> parent;
  int var = 0;
  double value = 0.0;
};

struct Node {
  std::shared_ptr<const BranchRecord> path;
  double bound = kInf;  // maximization form
  int depth = 0;
  long seq = 0;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.seq < b.seq;
  }
};

LpData to_lp(const MilpModel& model, double sign) {
  LpData lp;
  lp.rows = model.num_constraints();
  lp.cols = model.num_variables();
  lp.columns.resize(static_cast<std::size_t>(lp.cols));
  lp.cost.assign(static_cast<std::size_t>(lp.cols), 0.0);
  for (int j = 0; j < lp.cols; ++j) {
    lp.col_lo.push_back(model.variable(j).lower);
    lp.col_hi.push_back(model.variable(j).upper);
  }
  // A maximization becomes "minimize -c^T x".
  for (const Term& t : model.objective()) lp.cost[static_cast<std::size_t>(t.var)] += sign * t.coef;
  for (int i = 0; i < lp.rows; ++i) {
    const Constraint& c = model.constraints()[static_cast<std::size_t>(i)];
    for (const Term& t : c.terms) {
      auto& col = lp.columns[static_cast<std::size_t>(t.var)];
      if (!col.empty() && col.back().first == i) {
        col.back().second += t.coef;
      } else {
        col.emplace_back(i, t.coef);
      }
    }
    switch (c.relation) {
      case Relation::kLessEqual:
        lp.row_lo.push_back(-kInf);
        lp.row_hi.push_back(c.rhs);
        break;
      case Relation::kGreaterEqual:
        lp.row_lo.push_back(c.rhs);
        lp.row_hi.push_back(kInf);
        break;
      case Relation::kEqual:
        lp.row_lo.push_back(c.rhs);
        lp.row_hi.push_back(c.rhs);
        break;
    }
  }
  return lp;
}

}  // namespace

MilpSolution BranchAndBoundSolver::solve(const MilpModel& model, const SolveOptions& options) {
  const auto start = Clock::now();
  const auto deadline =
      start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(options.time_limit_seconds));
  model.validate();

  // Maximization form: score = to_max * objective.
  const double to_max = model.sense() == Sense::kMaximize ? 1.0 : -1.0;
  DenseSimplex lp(to_lp(model, -to_max));

  std::vector<int> binaries;
  for (int j = 0; j < model.num_variables(); ++j) {
    if (model.variable(j).kind == VarKind::kBinary) binaries.push_back(j);
  }

  MilpSolution result;
  bool have_incumbent = false;
  double incumbent = -kInf;
  const auto accept = [&](std::vector<double> assignment) {
    const double score = to_max * model.objective_value(assignment);
    if (!have_incumbent || score > incumbent) {
      have_incumbent = true;
      incumbent = score;
      result.assignment = std::move(assignment);
    }
  };
  if (options.initial_incumbent && model.max_violation(*options.initial_incumbent) <= options.feasibility_tol) {
    std::vector<double> start_point = *options.initial_incumbent;
    for (int j : binaries) start_point[static_cast<std::size_t>(j)] = std::round(start_point[static_cast<std::size_t>(j)]);
    accept(std::move(start_point));
  }
  const auto prunable = [&](double bound) {
    return have_incumbent && bound <= incumbent + options.relative_gap * std::max(1.0, std::abs(incumbent));
  };

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long seq = 0;
  open.push(Node{nullptr, kInf, 0, seq++});

  std::vector<double> wanted_lo(static_cast<std::size_t>(model.num_variables()));
  std::vector<double> wanted_hi(static_cast<std::size_t>(model.num_variables()));
  bool timed_out = false;

  while (!open.empty()) {
    if (Clock::now() > deadline) {
      timed_out = true;
      break;
    }
    Node node = open.top();
    open.pop();
    if (prunable(node.bound)) {
      // Best-first: every remaining node is bounded by this one.
      open = {};
      break;
    }

    for (int j : binaries) {
      wanted_lo[static_cast<std::size_t>(j)] = model.variable(j).lower;
      wanted_hi[static_cast<std::size_t>(j)] = model.variable(j).upper;
    }
    for (const BranchRecord* rec = node.path.get(); rec != nullptr; rec = rec->parent.get()) {
      wanted_lo[static_cast<std::size_t>(rec->var)] = rec->value;
      wanted_hi[static_cast<std::size_t>(rec->var)] = rec->value;
    }
    for (int j : binaries) lp.set_column_bounds(j, wanted_lo[static_cast<std::size_t>(j)], wanted_hi[static_cast<std::size_t>(j)]);

    ++result.nodes;
    if (have_incumbent) lp.set_cutoff(-(incumbent + options.relative_gap * std::max(1.0, std::abs(incumbent))));
    LpStatus status = lp.solve(deadline);
    if (status == LpStatus::kNumericalFailure) {
      lp.restart();
      status = lp.solve(deadline);
    }
    if (status == LpStatus::kDeadline) {
      open.push(node);
      timed_out = true;
      break;
    }
    if (status == LpStatus::kNumericalFailure) {
      throw std::runtime_error("LP relaxation failed to converge");
    }
    if (status == LpStatus::kInfeasible || status == LpStatus::kCutoff) continue;

    const double score = -lp.objective();
    if (prunable(score)) continue;

    int branch_var = -1;
    double most_fractional = options.integrality_tol;
    for (int j : binaries) {
      const double v = lp.value(j);
      const double frac = std::abs(v - std::round(v));
      if (frac > most_fractional) {
        most_fractional = frac;
        branch_var = j;
      }
    }
    if (branch_var < 0 && !lp.proven_optimal()) {
      // Integral point from a stalled basis: keep it, but the node's bound
      // is not settled, so split on the first free binary instead.
      std::vector<double> assignment(static_cast<std::size_t>(model.num_variables()));
      for (int j = 0; j < model.num_variables(); ++j) assignment[static_cast<std::size_t>(j)] = lp.value(j);
      for (int j : binaries) assignment[static_cast<std::size_t>(j)] = std::round(assignment[static_cast<std::size_t>(j)]);
      if (model.max_violation(assignment) <= options.feasibility_tol) accept(std::move(assignment));
      if (prunable(score)) continue;
      for (int j : binaries) {
        if (lp.column_lower(j) != lp.column_upper(j)) {
          branch_var = j;
          break;
        }
      }
    }
    if (branch_var < 0) {
      std::vector<double> assignment(static_cast<std::size_t>(model.num_variables()));
      for (int j = 0; j < model.num_variables(); ++j) assignment[static_cast<std::size_t>(j)] = lp.value(j);
      for (int j : binaries) assignment[static_cast<std::size_t>(j)] = std::round(assignment[static_cast<std::size_t>(j)]);
      accept(std::move(assignment));
      continue;
    }
    for (double value : {0.0, 1.0}) {
      auto rec = std::make_shared<const BranchRecord>(BranchRecord{node.path, branch_var, value});
      open.push(Node{std::move(rec), score, node.depth + 1, seq++});
    }
  }

  result.lp_iterations = lp.iterations();
  result.solve_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (have_incumbent) result.objective_value = to_max * incumbent;
  if (timed_out && (open.empty() || prunable(open.top().bound))) timed_out = false;
  if (!timed_out) {
    result.status = have_incumbent ? SolveStatus::kOptimal : SolveStatus::kInfeasible;
    result.gap = 0.0;
    return result;
  }
  if (!have_incumbent) {
    result.status = SolveStatus::kTimeoutNoSolution;
    result.gap = kInf;
    return result;
  }
  double best_bound = incumbent;
  if (!open.empty()) best_bound = std::max(best_bound, open.top().bound);
  result.status = SolveStatus::kFeasibleTimeout;
  result.gap = std::isfinite(best_bound) ? (best_bound - incumbent) / std::max(std::abs(incumbent), 1e-9) : kInf;
  return result;
}

std::unique_ptr<MilpSolver> make_default_solver() { return std::make_unique<BranchAndBoundSolver>(); }

}  // namespace tocpur::milp
