#pragma once

#include <chrono>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tocpur::milp {

enum class VarKind { kBinary, kContinuous };
enum class Relation { kLessEqual, kEqual, kGreaterEqual };
enum class Sense { kMaximize, kMinimize };

struct Variable {
  std::string name;
  VarKind kind = VarKind::kContinuous;
  double lower = 0.0;
  double upper = 0.0;
};

struct Term {
  int var = 0;
  double coef = 0.0;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

class MilpModel {
 public:
  int add_binary(std::string name);
  int add_continuous(std::string name, double lower, double upper);
  int add_constraint(std::string name, std::vector<Term> terms, Relation relation, double rhs);
  void set_objective(std::vector<Term> terms, Sense sense);
  /// Tightens a variable's bounds in place (used to fix binaries).
  void fix(int var, double value);

  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  const Variable& variable(int id) const { return variables_[static_cast<std::size_t>(id)]; }
  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::vector<Term>& objective() const { return objective_; }
  Sense sense() const { return sense_; }

  /// Throws std::invalid_argument on dangling variable ids, non-finite data,
  /// crossed or infinite bounds, or binaries with bounds outside [0,1].
  void validate() const;

  double objective_value(const std::vector<double>& assignment) const;
  /// Largest bound, row, or integrality violation of `assignment`.
  double max_violation(const std::vector<double>& assignment) const;

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  std::vector<Term> objective_;
  Sense sense_ = Sense::kMaximize;
};

/// CPLEX-LP style text dump for cross-checking with external solvers.
void write_lp(const MilpModel& model, std::ostream& out);

enum class SolveStatus { kOptimal, kFeasibleTimeout, kInfeasible, kTimeoutNoSolution };

std::string_view to_string(SolveStatus status);
bool has_solution(SolveStatus status);

struct MilpSolution {
  SolveStatus status = SolveStatus::kTimeoutNoSolution;
  std::vector<double> assignment;
  double objective_value = 0.0;
  /// Relative gap between the best bound and the incumbent; 0 when optimal.
  double gap = 0.0;
  double solve_seconds = 0.0;
  long nodes = 0;
  long lp_iterations = 0;
};

struct SolveOptions {
  double time_limit_seconds = 1000.0;
  /// Optional feasible starting point; ignored when it violates the model.
  std::optional<std::vector<double>> initial_incumbent;
  double feasibility_tol = 1e-6;
  double integrality_tol = 1e-6;
  double relative_gap = 1e-9;
};

class MilpSolver {
 public:
  virtual ~MilpSolver() = default;
  virtual MilpSolution solve(const MilpModel& model, const SolveOptions& options) = 0;
};

/// Best-first branch-and-bound on the most fractional binary with a dense
/// bounded dual-simplex relaxation.
class BranchAndBoundSolver final : public MilpSolver {
 public:
  MilpSolution solve(const MilpModel& model, const SolveOptions& options) override;
};

std::unique_ptr<MilpSolver> make_default_solver();

}  // namespace tocpur::milp
