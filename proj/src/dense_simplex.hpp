#pragma once

#include <chrono>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace tocpur::milp::detail {

using Clock = std::chrono::steady_clock;

// minimize cost^T x  s.t.  row_lo <= A x <= row_hi,  col_lo <= x <= col_hi.
// Every structural column must be boxed; row bounds may be infinite.
struct LpData {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<std::pair<int, double>>> columns;
  std::vector<double> cost;
  std::vector<double> col_lo, col_hi;
  std::vector<double> row_lo, row_hi;
};

enum class LpStatus { kOptimal, kInfeasible, kCutoff, kDeadline, kNumericalFailure };

// Bounded dual simplex on an explicit dense tableau B^-1 [A | -I]. Row i
// carries a logical column s_i = (A x)_i bounded by the row bounds. Column
// bounds can be changed between solves; the tableau stays dual feasible, so
// re-solving after a bound change warm-starts from the previous basis.
class DenseSimplex {
 public:
  explicit DenseSimplex(LpData data);

  void set_column_bounds(int col, double lo, double hi);
  double column_lower(int col) const { return lo_[static_cast<std::size_t>(col)]; }
  double column_upper(int col) const { return hi_[static_cast<std::size_t>(col)]; }

  /// Solves stop early with kCutoff once the optimum provably exceeds this.
  void set_cutoff(double value) { cutoff_ = value; }

  LpStatus solve(Clock::time_point deadline);
  /// Drops the current basis and starts over from the slack basis.
  void restart() { reset_to_slack_basis(); }

  /// Lower bound on the optimum after kOptimal; equal to it up to a small
  /// tolerance when proven_optimal().
  double objective() const { return bound_; }
  bool proven_optimal() const { return value_ - bound_ <= 1e-6 * (1.0 + std::abs(value_)); }
  double value(int col) const { return x_[static_cast<std::size_t>(col)]; }
  long iterations() const { return iterations_; }
  long refactorizations() const { return refactors_; }

 private:
  enum class Step { kContinue, kOptimal, kInfeasible };

  double& tab(int r, int j) { return tab_[static_cast<std::size_t>(r) * width_ + static_cast<std::size_t>(j)]; }
  double tab(int r, int j) const {
    return tab_[static_cast<std::size_t>(r) * width_ + static_cast<std::size_t>(j)];
  }

  void load_slack_tableau();
  void reset_to_slack_basis();
  bool refactor();
  void recompute_duals();
  void recompute_primal();
  void place_nonbasic(int j);
  void pivot(int r, int q);
  void use_costs(bool perturbed);
  double lagrangian_bound() const;
  LpStatus run(Clock::time_point deadline);
  LpStatus primal_cleanup(Clock::time_point deadline);
  Step iterate(bool bland);
  bool residual_ok() const;

  LpData data_;
  int m_ = 0;
  int n_ = 0;
  int width_ = 0;
  std::vector<double> tab_;
  std::vector<double> d_;
  std::vector<double> x_;
  std::vector<double> lo_, hi_;
  std::vector<double> cost_;
  std::vector<double> true_cost_;
  std::vector<double> perturbed_cost_;
  bool perturbed_ = false;
  double value_ = 0.0;
  double bound_ = 0.0;
  double cutoff_ = std::numeric_limits<double>::infinity();
  std::vector<int> basis_;
  std::vector<int> row_of_;
  std::vector<char> at_upper_;
  std::vector<int> scratch_;
  long iterations_ = 0;
  long refactors_ = 0;
  int since_refactor_ = 0;
};

}  // namespace tocpur::milp::detail
