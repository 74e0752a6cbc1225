// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include "ucr/milp/problem.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "ucr/core/error.hpp"

namespace ucr::milp {

int MilpProblem::add_variable(std::string var_name, double lower, double upper,
                              VarType type, double cost) {
  variables.push_back({std::move(var_name), lower, upper, type, cost});
  return variable_count() - 1;
}

int MilpProblem::add_constraint(std::string row_name, std::vector<Term> terms,
                                Relation relation, double rhs) {
  constraints.push_back({std::move(row_name), std::move(terms), relation, rhs});
  return constraint_count() - 1;
}

int MilpProblem::binary_count() const {
  return static_cast<int>(std::count_if(
      variables.begin(), variables.end(),
      [](const Variable& v) { return v.type == VarType::kBinary; }));
}

int MilpProblem::free_binary_count() const {
  return static_cast<int>(
      std::count_if(variables.begin(), variables.end(), [](const Variable& v) {
        return v.type == VarType::kBinary && v.lower <= 0.0 && v.upper >= 1.0;
      }));
}

std::vector<int> MilpProblem::binary_indices() const {
  std::vector<int> out;
  for (int j = 0; j < variable_count(); ++j) {
    if (variables[j].type == VarType::kBinary) out.push_back(j);
  }
  return out;
}

double MilpProblem::evaluate_objective(const std::vector<double>& values) const {
  if (static_cast<int>(values.size()) != variable_count()) {
    throw DimensionError(fmt::format("expected {} values, got {}",
                                     variable_count(), values.size()));
  }
  double obj = objective_constant;
  for (int j = 0; j < variable_count(); ++j) obj += variables[j].cost * values[j];
  return obj;
}

double MilpProblem::row_activity(int row, const std::vector<double>& values) const {
  double s = 0.0;
  for (const Term& t : constraints.at(row).terms) s += t.coef * values.at(t.var);
  return s;
}

double MilpProblem::max_violation(const std::vector<double>& values) const {
  if (static_cast<int>(values.size()) != variable_count()) {
    throw DimensionError(fmt::format("expected {} values, got {}",
                                     variable_count(), values.size()));
  }
  double worst = 0.0;
  for (int j = 0; j < variable_count(); ++j) {
    worst = std::max({worst, variables[j].lower - values[j],
                      values[j] - variables[j].upper});
  }
  for (int i = 0; i < constraint_count(); ++i) {
    const double a = row_activity(i, values);
    const double rhs = constraints[i].rhs;
    switch (constraints[i].relation) {
      case Relation::kLessEqual: worst = std::max(worst, a - rhs); break;
      case Relation::kGreaterEqual: worst = std::max(worst, rhs - a); break;
      case Relation::kEqual: worst = std::max(worst, std::abs(a - rhs)); break;
    }
  }
  return worst;
}

void MilpProblem::validate() const {
  for (int j = 0; j < variable_count(); ++j) {
    const Variable& v = variables[j];
    if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower > v.upper) {
      throw ValidationError(fmt::format("variable '{}' has invalid bounds [{}, {}]",
                                        v.name, v.lower, v.upper));
    }
    if (!std::isfinite(v.cost)) {
      throw ValidationError(fmt::format("variable '{}' has non-finite cost", v.name));
    }
    if (v.type == VarType::kBinary && (v.lower < 0.0 || v.upper > 1.0)) {
      throw ValidationError(
          fmt::format("binary variable '{}' has bounds outside [0, 1]", v.name));
    }
  }
  for (const Constraint& c : constraints) {
    if (!std::isfinite(c.rhs)) {
      throw ValidationError(fmt::format("row '{}' has non-finite rhs", c.name));
    }
    for (const Term& t : c.terms) {
      if (t.var < 0 || t.var >= variable_count()) {
        throw ValidationError(fmt::format(
            "row '{}' references unknown variable {}", c.name, t.var));
      }
      if (!std::isfinite(t.coef)) {
        throw ValidationError(
            fmt::format("row '{}' has a non-finite coefficient", c.name));
      }
    }
  }
}

MilpProblem MilpProblem::relaxed() const {
  MilpProblem copy = *this;
  for (Variable& v : copy.variables) v.type = VarType::kContinuous;
  return copy;
}

MilpProblem fix_variables(const MilpProblem& problem,
                          const std::vector<std::pair<int, double>>& fixings) {
  MilpProblem out = problem;
  for (const auto& [index, value] : fixings) {
    if (index < 0 || index >= out.variable_count()) {
      throw ValidationError(fmt::format("cannot fix unknown variable {}", index));
    }
    Variable& v = out.variables[index];
    if (v.type == VarType::kBinary && value != 0.0 && value != 1.0) {
      throw ValidationError(
          fmt::format("binary '{}' can only be fixed at 0 or 1, got {}", v.name, value));
    }
    if (value < v.lower || value > v.upper) {
      throw ValidationError(fmt::format("fixing '{}' at {} violates bounds [{}, {}]",
                                        v.name, value, v.lower, v.upper));
    }
    v.lower = value;
    v.upper = value;
  }
  return out;
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kFeasibleGapMet: return "feasible";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
    case SolveStatus::kLimitReached: return "limit";
  }
  return "unknown";
}

void SolveOptions::validate() const {
  if (!(mip_gap >= 0.0)) throw ValidationError("mip_gap must be non-negative");
  if (!(feasibility_tolerance > 0.0)) {
    throw ValidationError("feasibility_tolerance must be positive");
  }
  if (!(integrality_tolerance > 0.0 && integrality_tolerance < 0.5)) {
    throw ValidationError("integrality_tolerance must lie in (0, 0.5)");
  }
  if (!(time_limit > 0.0)) throw ValidationError("time_limit must be positive");
  if (node_limit <= 0) throw ValidationError("node_limit must be positive");
  if (reliability < 0) throw ValidationError("reliability must be non-negative");
  if (strong_candidates < 0) {
    throw ValidationError("strong_candidates must be non-negative");
  }
}

}  // namespace ucr::milp
