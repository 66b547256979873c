#include "dense_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace tocpur::milp::detail {
namespace {

constexpr double kPrimalTol = 1e-9;
constexpr double kDualTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kDropTol = 1e-13;
constexpr int kRefactorInterval = 1500;
constexpr double kPerturbation = 1e-7;
constexpr double kPrimalPivotTol = 1e-7;
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

DenseSimplex::DenseSimplex(LpData data) : data_(std::move(data)) {
  m_ = data_.rows;
  n_ = data_.cols;
  width_ = n_ + m_;
  for (int j = 0; j < n_; ++j) {
    if (!std::isfinite(data_.col_lo[static_cast<std::size_t>(j)]) ||
        !std::isfinite(data_.col_hi[static_cast<std::size_t>(j)])) {
      throw std::invalid_argument("dense simplex requires boxed structural columns");
    }
  }
  lo_.resize(static_cast<std::size_t>(width_));
  hi_.resize(static_cast<std::size_t>(width_));
  cost_.assign(static_cast<std::size_t>(width_), 0.0);
  for (int j = 0; j < n_; ++j) {
    lo_[static_cast<std::size_t>(j)] = data_.col_lo[static_cast<std::size_t>(j)];
    hi_[static_cast<std::size_t>(j)] = data_.col_hi[static_cast<std::size_t>(j)];
    cost_[static_cast<std::size_t>(j)] = data_.cost[static_cast<std::size_t>(j)];
  }
  // Row activity is confined by the column boxes, so open row bounds can be
  // replaced by finite ones. With every column boxed, any basis becomes dual
  // feasible by moving nonbasic columns to the right bound.
  std::vector<double> act_lo(static_cast<std::size_t>(m_), 0.0), act_hi(static_cast<std::size_t>(m_), 0.0);
  for (int j = 0; j < n_; ++j) {
    for (const auto& [r, a] : data_.columns[static_cast<std::size_t>(j)]) {
      const double p = a * data_.col_lo[static_cast<std::size_t>(j)];
      const double q = a * data_.col_hi[static_cast<std::size_t>(j)];
      act_lo[static_cast<std::size_t>(r)] += std::min(p, q);
      act_hi[static_cast<std::size_t>(r)] += std::max(p, q);
    }
  }
  for (int r = 0; r < m_; ++r) {
    const auto rs = static_cast<std::size_t>(r);
    const double slack = 1.0 + 1e-6 * (std::abs(act_lo[rs]) + std::abs(act_hi[rs]));
    lo_[static_cast<std::size_t>(n_ + r)] = std::max(data_.row_lo[rs], act_lo[rs] - slack);
    hi_[static_cast<std::size_t>(n_ + r)] = std::min(data_.row_hi[rs], act_hi[rs] + slack);
  }

  // Degenerate problems (many zero costs) stall the dual simplex; a tiny
  // fixed perturbation breaks the ties and is removed before reporting.
  true_cost_ = cost_;
  perturbed_cost_ = cost_;
  std::mt19937_64 rng(0x5eedu);
  std::uniform_real_distribution<double> jitter(1.0, 2.0);
  for (int j = 0; j < n_; ++j) {
    const auto js = static_cast<std::size_t>(j);
    const double c = true_cost_[js];
    const double eps = (c < 0.0 ? -kPerturbation : kPerturbation) * (1.0 + std::abs(c)) * jitter(rng);
    perturbed_cost_[js] = c + eps;
  }
  cost_ = perturbed_cost_;
  perturbed_ = true;
  x_.assign(static_cast<std::size_t>(width_), 0.0);
  at_upper_.assign(static_cast<std::size_t>(width_), 0);
  reset_to_slack_basis();
}

void DenseSimplex::load_slack_tableau() {
  tab_.assign(static_cast<std::size_t>(m_) * static_cast<std::size_t>(width_), 0.0);
  for (int j = 0; j < n_; ++j) {
    for (const auto& [r, a] : data_.columns[static_cast<std::size_t>(j)]) tab(r, j) -= a;
  }
  basis_.resize(static_cast<std::size_t>(m_));
  row_of_.assign(static_cast<std::size_t>(width_), -1);
  for (int r = 0; r < m_; ++r) {
    tab(r, n_ + r) = 1.0;
    basis_[static_cast<std::size_t>(r)] = n_ + r;
    row_of_[static_cast<std::size_t>(n_ + r)] = r;
  }
}

void DenseSimplex::reset_to_slack_basis() {
  load_slack_tableau();
  d_ = cost_;
  for (int j = 0; j < n_; ++j) place_nonbasic(j);
  recompute_primal();
  since_refactor_ = 0;
}

// Keeps a nonbasic column at the bound its reduced cost asks for.
void DenseSimplex::place_nonbasic(int j) {
  const auto js = static_cast<std::size_t>(j);
  const bool upper = lo_[js] != hi_[js] && d_[js] < 0.0;
  at_upper_[js] = upper;
  x_[js] = upper ? hi_[js] : lo_[js];
}

void DenseSimplex::recompute_duals() {
  d_ = cost_;
  for (int r = 0; r < m_; ++r) {
    const double cb = cost_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])];
    if (cb == 0.0) continue;
    const double* row = &tab_[static_cast<std::size_t>(r) * width_];
    for (int j = 0; j < width_; ++j) d_[static_cast<std::size_t>(j)] -= cb * row[j];
  }
  for (int r = 0; r < m_; ++r) d_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])] = 0.0;
}

void DenseSimplex::recompute_primal() {
  for (int r = 0; r < m_; ++r) {
    const double* row = &tab_[static_cast<std::size_t>(r) * width_];
    double v = 0.0;
    for (int j = 0; j < width_; ++j) {
      if (row_of_[static_cast<std::size_t>(j)] >= 0 || row[j] == 0.0) continue;
      v -= row[j] * x_[static_cast<std::size_t>(j)];
    }
    x_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])] = v;
  }
}

// Rebuilds the tableau for the current basis from the original data.
// Returns false when the rebuilt basis cannot be made dual feasible.
bool DenseSimplex::refactor() {
  ++refactors_;
  std::vector<int> wanted;
  for (int r = 0; r < m_; ++r) {
    const int j = basis_[static_cast<std::size_t>(r)];
    if (j < n_) wanted.push_back(j);
  }
  std::vector<char> in_target(static_cast<std::size_t>(width_), 0);
  for (int r = 0; r < m_; ++r) in_target[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])] = 1;
  const std::vector<char> old_upper = at_upper_;

  load_slack_tableau();
  std::vector<int> ejected;
  for (int q : wanted) {
    int best_row = -1;
    double best = kPivotTol * 100.0;
    for (int r = 0; r < m_; ++r) {
      const int b = basis_[static_cast<std::size_t>(r)];
      if (b < n_ || in_target[static_cast<std::size_t>(b)]) continue;
      const double a = std::abs(tab(r, q));
      if (a > best) {
        best = a;
        best_row = r;
      }
    }
    if (best_row < 0) {
      ejected.push_back(q);
      continue;
    }
    pivot(best_row, q);
  }
  recompute_duals();
  at_upper_ = old_upper;
  for (int j = 0; j < width_; ++j) {
    const auto js = static_cast<std::size_t>(j);
    if (row_of_[js] >= 0) continue;
    x_[js] = at_upper_[js] ? hi_[js] : lo_[js];
  }
  for (int q : ejected) place_nonbasic(q);
  bool dual_ok = true;
  for (int j = 0; j < width_; ++j) {
    const auto js = static_cast<std::size_t>(j);
    if (row_of_[js] >= 0 || lo_[js] == hi_[js]) continue;
    const double signed_d = at_upper_[js] ? -d_[js] : d_[js];
    if (signed_d >= -1e-7) continue;
    if (std::isfinite(lo_[js]) && std::isfinite(hi_[js])) {
      place_nonbasic(j);
    } else {
      dual_ok = false;
    }
  }
  recompute_primal();
  since_refactor_ = 0;
  return dual_ok;
}

void DenseSimplex::pivot(int r, int q) {
  double* prow = &tab_[static_cast<std::size_t>(r) * width_];
  const double inv = 1.0 / prow[q];
  scratch_.clear();
  for (int j = 0; j < width_; ++j) {
    if (prow[j] == 0.0) continue;
    prow[j] *= inv;
    if (std::abs(prow[j]) < kDropTol) {
      prow[j] = 0.0;
      continue;
    }
    scratch_.push_back(j);
  }
  prow[q] = 1.0;
  for (int i = 0; i < m_; ++i) {
    if (i == r) continue;
    double* row = &tab_[static_cast<std::size_t>(i) * width_];
    const double f = row[q];
    if (f == 0.0) continue;
    for (int j : scratch_) {
      double v = row[j] - f * prow[j];
      if (std::abs(v) < kDropTol) v = 0.0;
      row[j] = v;
    }
    row[q] = 0.0;
  }
  const double fd = d_[static_cast<std::size_t>(q)];
  if (fd != 0.0) {
    for (int j : scratch_) d_[static_cast<std::size_t>(j)] -= fd * prow[j];
  }
  d_[static_cast<std::size_t>(q)] = 0.0;

  const int leaving = basis_[static_cast<std::size_t>(r)];
  row_of_[static_cast<std::size_t>(leaving)] = -1;
  basis_[static_cast<std::size_t>(r)] = q;
  row_of_[static_cast<std::size_t>(q)] = r;
  ++since_refactor_;
}

void DenseSimplex::set_column_bounds(int col, double lo, double hi) {
  const auto js = static_cast<std::size_t>(col);
  if (lo_[js] == lo && hi_[js] == hi) return;
  lo_[js] = lo;
  hi_[js] = hi;
  if (row_of_[js] >= 0) return;
  const double old = x_[js];
  place_nonbasic(col);
  const double delta = x_[js] - old;
  if (delta == 0.0) return;
  for (int r = 0; r < m_; ++r) {
    const double a = tab(r, col);
    if (a != 0.0) x_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])] -= a * delta;
  }
}

DenseSimplex::Step DenseSimplex::iterate(bool bland) {
  int r = -1;
  double worst = kPrimalTol;
  for (int i = 0; i < m_; ++i) {
    const auto b = static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)]);
    const double v = x_[b];
    const double infeas = std::max(lo_[b] - v, v - hi_[b]);
    if (infeas <= kPrimalTol) continue;
    if (bland) {
      if (r < 0 || basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(r)]) r = i;
    } else if (infeas > worst) {
      worst = infeas;
      r = i;
    }
  }
  if (r < 0) return Step::kOptimal;

  const int leaving = basis_[static_cast<std::size_t>(r)];
  const auto ls = static_cast<std::size_t>(leaving);
  const bool increase = x_[ls] < lo_[ls];
  const double target = increase ? lo_[ls] : hi_[ls];
  const double* row = &tab_[static_cast<std::size_t>(r) * width_];

  // Harris two-pass ratio test.
  double bound = kInf;
  for (int j = 0; j < width_; ++j) {
    const auto js = static_cast<std::size_t>(j);
    const double a = row[j];
    if (a == 0.0 || row_of_[js] >= 0 || lo_[js] == hi_[js]) continue;
    const double s = at_upper_[js] ? -1.0 : 1.0;
    const double move = -a * s;
    if (increase ? move <= kPivotTol : move >= -kPivotTol) continue;
    const double dj = std::max(s * d_[js], 0.0);
    bound = std::min(bound, (dj + kDualTol) / std::abs(a));
  }
  if (bound == kInf) return Step::kInfeasible;

  int q = -1;
  double best_alpha = 0.0;
  double best_ratio = kInf;
  for (int j = 0; j < width_; ++j) {
    const auto js = static_cast<std::size_t>(j);
    const double a = row[j];
    if (a == 0.0 || row_of_[js] >= 0 || lo_[js] == hi_[js]) continue;
    const double s = at_upper_[js] ? -1.0 : 1.0;
    const double move = -a * s;
    if (increase ? move <= kPivotTol : move >= -kPivotTol) continue;
    const double ratio = std::max(s * d_[js], 0.0) / std::abs(a);
    if (ratio > bound) continue;
    if (bland) {
      if (ratio < best_ratio) {
        best_ratio = ratio;
        q = j;
      }
    } else if (std::abs(a) > best_alpha) {
      best_alpha = std::abs(a);
      q = j;
    }
  }
  if (q < 0) return Step::kInfeasible;

  const auto qs = static_cast<std::size_t>(q);
  const double alpha = row[q];
  const double delta = (target - x_[ls]) / (-alpha);
  x_[qs] += delta;
  for (int i = 0; i < m_; ++i) {
    const double a = tab(i, q);
    if (a != 0.0) x_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] -= a * delta;
  }
  x_[ls] = target;
  at_upper_[ls] = !increase;
  pivot(r, q);
  ++iterations_;
  return Step::kContinue;
}

bool DenseSimplex::residual_ok() const {
  std::vector<double> activity(static_cast<std::size_t>(m_), 0.0);
  for (int j = 0; j < n_; ++j) {
    const double v = x_[static_cast<std::size_t>(j)];
    if (v == 0.0) continue;
    for (const auto& [r, a] : data_.columns[static_cast<std::size_t>(j)]) activity[static_cast<std::size_t>(r)] += a * v;
  }
  for (int r = 0; r < m_; ++r) {
    const double s = x_[static_cast<std::size_t>(n_ + r)];
    if (std::abs(activity[static_cast<std::size_t>(r)] - s) > 1e-7 * (1.0 + std::abs(s))) return false;
  }
  for (int j = 0; j < width_; ++j) {
    const auto js = static_cast<std::size_t>(j);
    if (x_[js] < lo_[js] - 1e-7 || x_[js] > hi_[js] + 1e-7) return false;
  }
  return true;
}

void DenseSimplex::use_costs(bool perturbed) {
  if (perturbed_ == perturbed) return;
  perturbed_ = perturbed;
  cost_ = perturbed ? perturbed_cost_ : true_cost_;
  recompute_duals();
}

LpStatus DenseSimplex::solve(Clock::time_point deadline) {
  for (int attempt = 0;; ++attempt) {
    use_costs(true);
    // The dual simplex needs every nonbasic column on its dual-feasible bound.
    for (int j = 0; j < width_; ++j) {
      if (row_of_[static_cast<std::size_t>(j)] < 0) place_nonbasic(j);
    }
    recompute_primal();
    LpStatus status = run(deadline);
    if (status != LpStatus::kOptimal) return status;
    use_costs(false);
    status = primal_cleanup(deadline);
    if (status != LpStatus::kOptimal) return status;
    value_ = 0.0;
    for (int j = 0; j < n_; ++j) value_ += true_cost_[static_cast<std::size_t>(j)] * x_[static_cast<std::size_t>(j)];
    bound_ = std::min(lagrangian_bound(), value_);
    // A large gap means the tableau has drifted; rebuild it once and retry.
    if (proven_optimal() || attempt > 0) return LpStatus::kOptimal;
    if (!refactor()) reset_to_slack_basis();
  }
}

// Primal simplex from the primal feasible basis left by the perturbed solve;
// usually only a handful of pivots. If it stalls, the basis is kept and the
// caller falls back to the Lagrangian bound of the current duals.
LpStatus DenseSimplex::primal_cleanup(Clock::time_point deadline) {
  long count = 0;
  while (true) {
    if ((++count & 31) == 0 && Clock::now() > deadline) return LpStatus::kDeadline;
    int q = -1;
    double dir = 0.0;
    for (int j = 0; j < width_; ++j) {
      const auto js = static_cast<std::size_t>(j);
      if (row_of_[js] >= 0 || lo_[js] == hi_[js]) continue;
      if (!at_upper_[js] && d_[js] < -kDualTol) {
        q = j;
        dir = 1.0;
        break;
      }
      if (at_upper_[js] && d_[js] > kDualTol) {
        q = j;
        dir = -1.0;
        break;
      }
    }
    if (q < 0) return residual_ok() ? LpStatus::kOptimal : LpStatus::kNumericalFailure;
    if (count > 4L * width_ + 100) return residual_ok() ? LpStatus::kOptimal : LpStatus::kNumericalFailure;

    // Harris two-pass ratio test, preferring large pivots among near-ties.
    const auto qs = static_cast<std::size_t>(q);
    const auto room_of = [&](int i, double rate, double slack) {
      const auto b = static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)]);
      return rate > 0.0 ? (std::max(hi_[b] - x_[b], 0.0) + slack) / rate
                        : (std::max(x_[b] - lo_[b], 0.0) + slack) / -rate;
    };
    double limit = hi_[qs] - lo_[qs];
    for (int i = 0; i < m_; ++i) {
      const double rate = -tab(i, q) * dir;
      if (std::abs(rate) > kPrimalPivotTol) limit = std::min(limit, room_of(i, rate, kPrimalTol));
    }
    double step = hi_[qs] - lo_[qs];
    int r = -1;
    double best_rate = 0.0;
    for (int i = 0; i < m_; ++i) {
      const double rate = -tab(i, q) * dir;
      if (std::abs(rate) <= kPrimalPivotTol || room_of(i, rate, 0.0) > limit) continue;
      if (std::abs(rate) > best_rate) {
        best_rate = std::abs(rate);
        r = i;
      }
    }
    if (r >= 0) step = room_of(r, -tab(r, q) * dir, 0.0);
    const double delta = dir * step;
    x_[qs] += delta;
    for (int i = 0; i < m_; ++i) {
      const double a = tab(i, q);
      if (a != 0.0) x_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] -= a * delta;
    }
    if (r < 0) {
      at_upper_[qs] = dir > 0.0;
      x_[qs] = at_upper_[qs] ? hi_[qs] : lo_[qs];
      continue;
    }
    const auto ls = static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)]);
    const bool to_upper = -tab(r, q) * dir > 0.0;
    x_[ls] = to_upper ? hi_[ls] : lo_[ls];
    at_upper_[ls] = to_upper;
    pivot(r, q);
    ++iterations_;
  }
}

LpStatus DenseSimplex::run(Clock::time_point deadline) {
  const long soft_cap = 20L * width_ + 1000;
  int recoveries = 0;
  bool bland = false;
  long count = 0;
  bool verified_infeasible = false;
  while (true) {
    if ((++count & 31) == 0 && Clock::now() > deadline) return LpStatus::kDeadline;
    if (since_refactor_ >= kRefactorInterval && !refactor()) reset_to_slack_basis();
    if (count > soft_cap) {
      if (recoveries >= 2) return LpStatus::kNumericalFailure;
      ++recoveries;
      count = 0;
      bland = true;
      if (!refactor()) reset_to_slack_basis();
    }
    if (cutoff_ < kInf && (count & 7) == 0 && lagrangian_bound() > cutoff_) return LpStatus::kCutoff;
    switch (iterate(bland)) {
      case Step::kContinue:
        break;
      case Step::kOptimal:
        if (residual_ok()) return LpStatus::kOptimal;
        if (recoveries >= 2) return LpStatus::kNumericalFailure;
        ++recoveries;
        if (!refactor()) reset_to_slack_basis();
        break;
      case Step::kInfeasible:
        // Confirm on a fresh factorization before declaring infeasibility.
        if (verified_infeasible || since_refactor_ == 0) return LpStatus::kInfeasible;
        verified_infeasible = true;
        if (!refactor()) reset_to_slack_basis();
        break;
    }
  }
}

// Reads multipliers y off the logical columns' reduced costs and evaluates
// min over the boxes of (c - A^T y)^T x + y^T s with the original data. This
// bounds the LP optimum from below for any y, so tableau drift can only
// weaken the bound, never make it wrong.
double DenseSimplex::lagrangian_bound() const {
  double sum = 0.0;
  for (int j = 0; j < n_; ++j) {
    const auto js = static_cast<std::size_t>(j);
    double r = true_cost_[js];
    for (const auto& [i, a] : data_.columns[js]) r -= d_[static_cast<std::size_t>(n_ + i)] * a;
    sum += r > 0.0 ? r * lo_[js] : r * hi_[js];
  }
  for (int i = 0; i < m_; ++i) {
    const auto is = static_cast<std::size_t>(n_ + i);
    const double y = d_[is];
    if (y != 0.0) sum += y > 0.0 ? y * lo_[is] : y * hi_[is];
  }
  return sum;
}

}  // namespace tocpur::milp::detail
