// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ucr::milp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class VarType : std::uint8_t { kContinuous, kBinary };
enum class Relation : std::uint8_t { kLessEqual, kEqual, kGreaterEqual };

struct Term {
  int var = 0;
  double coef = 0.0;
};

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInfinity;
  VarType type = VarType::kContinuous;
  double cost = 0.0;  // objective coefficient
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

/// Minimization MILP: min cost'x + objective_constant subject to the rows and
/// variable bounds.
struct MilpProblem {
  std::string name = "problem";
  std::vector<Variable> variables;
  std::vector<Constraint> constraints;
  double objective_constant = 0.0;

  int add_variable(std::string var_name, double lower, double upper,
                   VarType type = VarType::kContinuous, double cost = 0.0);
  int add_constraint(std::string row_name, std::vector<Term> terms,
                     Relation relation, double rhs);

  int variable_count() const { return static_cast<int>(variables.size()); }
  int constraint_count() const { return static_cast<int>(constraints.size()); }
  int binary_count() const;
  /// Binaries whose bounds still leave both 0 and 1 available.
  int free_binary_count() const;
  std::vector<int> binary_indices() const;

  double evaluate_objective(const std::vector<double>& values) const;
  double row_activity(int row, const std::vector<double>& values) const;
  /// Largest bound or row violation of `values`.
  double max_violation(const std::vector<double>& values) const;

  /// Throws ValidationError if a term references a missing variable, a bound
  /// pair is inverted, or a binary has bounds outside [0, 1].
  void validate() const;

  /// Copy with every binary turned continuous.
  MilpProblem relaxed() const;
};

/// Fixes variables to the given values (lower = upper = value). Values must lie
/// within the variable bounds and binaries must be fixed at 0 or 1; otherwise
/// ValidationError is thrown.
MilpProblem fix_variables(const MilpProblem& problem,
                          const std::vector<std::pair<int, double>>& fixings);

enum class SolveStatus {
  kOptimal,
  kFeasibleGapMet,
  kInfeasible,
  kUnbounded,
  kLimitReached
};

std::string to_string(SolveStatus status);

struct MilpSolution {
  SolveStatus status = SolveStatus::kInfeasible;
  std::vector<double> values;  // empty when no feasible point is known
  double objective = kInfinity;
  double bound = -kInfinity;
  double gap = kInfinity;
  long nodes_explored = 0;
  long lp_iterations = 0;
  double solve_time = 0.0;
  /// Objective of each accepted incumbent, in acceptance order.
  std::vector<double> incumbent_history;

  bool has_solution() const { return !values.empty(); }
};

/// kMostFractional picks the binary closest to 0.5. kReliability scores
/// candidates by pseudo-costs and falls back to strong branching for binaries
/// with fewer than `reliability` observations in either direction.
enum class BranchRule { kMostFractional, kReliability };

struct SolveOptions {
  double mip_gap = 1e-4;
  double feasibility_tolerance = 1e-6;
  double integrality_tolerance = 1e-6;
  double time_limit = kInfinity;  // seconds
  long node_limit = 10'000'000;
  /// Full assignment (indexed by variable); only binary entries are used.
  std::optional<std::vector<double>> warm_start;
  std::uint64_t seed = 0;
  BranchRule branching = BranchRule::kReliability;
  int reliability = 2;
  /// Upper bound on strong-branching candidates evaluated per node.
  int strong_candidates = 8;

  void validate() const;
};

}  // namespace ucr::milp
