#include <cmath>
#include <fmt/format.h>
#include <ostream>
#include <stdexcept>

#include "tocpur/milp.hpp"

namespace tocpur::milp {

int MilpModel::add_binary(std::string name) {
  variables_.push_back({std::move(name), VarKind::kBinary, 0.0, 1.0});
  return num_variables() - 1;
}

int MilpModel::add_continuous(std::string name, double lower, double upper) {
  variables_.push_back({std::move(name), VarKind::kContinuous, lower, upper});
  return num_variables() - 1;
}

int MilpModel::add_constraint(std::string name, std::vector<Term> terms, Relation relation, double rhs) {
  constraints_.push_back({std::move(name), std::move(terms), relation, rhs});
  return num_constraints() - 1;
}

void MilpModel::set_objective(std::vector<Term> terms, Sense sense) {
  objective_ = std::move(terms);
  sense_ = sense;
}

void MilpModel::fix(int var, double value) {
  Variable& v = variables_.at(static_cast<std::size_t>(var));
  v.lower = value;
  v.upper = value;
}

void MilpModel::validate() const {
  const auto check_terms = [&](const std::vector<Term>& terms, std::string_view where) {
    for (const Term& t : terms) {
      if (t.var < 0 || t.var >= num_variables()) {
        throw std::invalid_argument(fmt::format("{} references undeclared variable {}", where, t.var));
      }
      if (!std::isfinite(t.coef)) throw std::invalid_argument(fmt::format("{} has a non-finite coefficient", where));
    }
  };
  for (const Variable& v : variables_) {
    if (!std::isfinite(v.lower) || !std::isfinite(v.upper)) {
      throw std::invalid_argument(fmt::format("variable {} must have finite bounds", v.name));
    }
    if (v.lower > v.upper) throw std::invalid_argument(fmt::format("variable {} has crossed bounds", v.name));
    if (v.kind == VarKind::kBinary && (v.lower < 0.0 || v.upper > 1.0)) {
      throw std::invalid_argument(fmt::format("binary {} has bounds outside [0,1]", v.name));
    }
  }
  for (const Constraint& c : constraints_) {
    check_terms(c.terms, c.name.empty() ? std::string_view("constraint") : c.name);
    if (!std::isfinite(c.rhs)) throw std::invalid_argument(fmt::format("constraint {} has non-finite rhs", c.name));
  }
  check_terms(objective_, "objective");
}

double MilpModel::objective_value(const std::vector<double>& assignment) const {
  double sum = 0.0;
  for (const Term& t : objective_) sum += t.coef * assignment.at(static_cast<std::size_t>(t.var));
  return sum;
}

double MilpModel::max_violation(const std::vector<double>& assignment) const {
  if (static_cast<int>(assignment.size()) != num_variables()) return INFINITY;
  double worst = 0.0;
  for (int j = 0; j < num_variables(); ++j) {
    const Variable& v = variable(j);
    const double x = assignment[static_cast<std::size_t>(j)];
    if (!std::isfinite(x)) return INFINITY;
    worst = std::max({worst, v.lower - x, x - v.upper});
    if (v.kind == VarKind::kBinary) worst = std::max(worst, std::abs(x - std::round(x)));
  }
  for (const Constraint& c : constraints_) {
    double lhs = 0.0;
    for (const Term& t : c.terms) lhs += t.coef * assignment[static_cast<std::size_t>(t.var)];
    switch (c.relation) {
      case Relation::kLessEqual: worst = std::max(worst, lhs - c.rhs); break;
      case Relation::kGreaterEqual: worst = std::max(worst, c.rhs - lhs); break;
      case Relation::kEqual: worst = std::max(worst, std::abs(lhs - c.rhs)); break;
    }
  }
  return worst;
}

namespace {

void write_terms(const MilpModel& model, const std::vector<Term>& terms, std::ostream& out) {
  if (terms.empty()) {
    out << " 0";
    return;
  }
  bool first = true;
  for (const Term& t : terms) {
    const double c = t.coef;
    if (first) {
      out << (c < 0 ? " - " : " ");
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    out << fmt::format("{} {}", std::abs(c), model.variable(t.var).name);
    first = false;
  }
}

}  // namespace

void write_lp(const MilpModel& model, std::ostream& out) {
  out << (model.sense() == Sense::kMaximize ? "Maximize\n" : "Minimize\n") << " obj:";
  write_terms(model, model.objective(), out);
  out << "\nSubject To\n";
  for (int i = 0; i < model.num_constraints(); ++i) {
    const Constraint& c = model.constraints()[static_cast<std::size_t>(i)];
    out << ' ' << (c.name.empty() ? fmt::format("c{}", i) : c.name) << ':';
    write_terms(model, c.terms, out);
    switch (c.relation) {
      case Relation::kLessEqual: out << " <= "; break;
      case Relation::kGreaterEqual: out << " >= "; break;
      case Relation::kEqual: out << " = "; break;
    }
    out << fmt::format("{}\n", c.rhs);
  }
  out << "Bounds\n";
  for (const Variable& v : model.variables()) {
    if (v.kind == VarKind::kBinary && v.lower == 0.0 && v.upper == 1.0) continue;
    if (v.lower == v.upper) {
      out << fmt::format(" {} = {}\n", v.name, v.lower);
    } else {
      out << fmt::format(" {} <= {} <= {}\n", v.lower, v.name, v.upper);
    }
  }
  out << "Binaries\n";
  for (const Variable& v : model.variables()) {
    if (v.kind == VarKind::kBinary) out << ' ' << v.name << '\n';
  }
  out << "End\n";
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kFeasibleTimeout: return "feasible-timeout";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kTimeoutNoSolution: return "timeout-no-solution";
  }
  return "unknown";
}

bool has_solution(SolveStatus status) {
  return status == SolveStatus::kOptimal || status == SolveStatus::kFeasibleTimeout;
}

}  // namespace tocpur::milp
