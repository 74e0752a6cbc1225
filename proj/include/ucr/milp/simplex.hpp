// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "ucr/milp/problem.hpp"

namespace ucr::milp {

struct SimplexOptions {
  double primal_tolerance = 1e-9;
  double dual_tolerance = 1e-9;
  double pivot_tolerance = 1e-9;
  /// Consecutive non-improving iterations before Bland's rule takes over.
  int stall_threshold = 50;
  int refactor_interval = 100;
  /// Per solve() call; 0 selects 50 * (rows + columns) + 10000.
  long iteration_limit = 0;
};

/// Bounded-variable revised simplex over the LP relaxation of a MilpProblem.
///
/// Every row i gets a logical variable z_i = a_i'x whose bounds encode the
/// relation, so the working system is [A | -I] w = 0 with bounds on all of w.
/// The basis is held as a sparse LU factorization plus a product-form eta
/// file, refactorized periodically. Three drivers share the factorization:
///   * primal phase 1 (sum of infeasibilities) from any basis,
///   * primal phase 2 with Dantzig pricing, switching to Bland's rule after
///     `stall_threshold` degenerate iterations,
///   * dual simplex, used whenever the basis is dual feasible but not primal
///     feasible (the usual situation after a branching bound change).
/// The solver keeps its basis between calls, so changing bounds and calling
/// solve() again reoptimizes from the previous optimum.
class SimplexSolver {
 public:
  enum class Status { kOptimal, kInfeasible, kUnbounded };
  enum class VarState : std::uint8_t { kBasic, kAtLower, kAtUpper, kFree };

  struct Basis {
    std::vector<int> head;          // variable basic in each row position
    std::vector<VarState> state;    // per variable (structural then logical)
  };

  explicit SimplexSolver(const MilpProblem& problem, SimplexOptions options = {});
  ~SimplexSolver();
  SimplexSolver(const SimplexSolver&) = delete;
  SimplexSolver& operator=(const SimplexSolver&) = delete;

  int column_count() const { return n_; }
  int row_count() const { return m_; }

  void set_column_bounds(int j, double lower, double upper);
  double column_lower(int j) const { return lower_[j]; }
  double column_upper(int j) const { return upper_[j]; }

  /// Throws NumericalError if the iteration limit is exhausted.
  Status solve();

  double objective() const;
  /// Values of the structural columns.
  std::vector<double> primal_values() const;
  /// Reduced costs of all variables (structural then logical) at the current
  /// basis.
  std::vector<double> reduced_costs();
  const std::vector<VarState>& states() const { return state_; }

  Basis basis() const;
  void load_basis(const Basis& basis);

  /// Basis snapshot that also remembers the factorization it was taken on.
  /// Restoring is cheap while no refactorization has happened in between (the
  /// eta file is truncated); otherwise it falls back to load_basis().
  struct Checkpoint {
    Basis basis;
    std::size_t etas = 0;
    long epoch = -1;
  };
  Checkpoint checkpoint() const;
  void restore(const Checkpoint& point);
  void reset_to_slack_basis();

  long iterations() const { return iterations_; }

 private:
  struct Factor;
  struct Eta {
    int row;
    double pivot;
    std::vector<int> index;
    std::vector<double> value;
  };

  enum class Outcome { kDone, kInfeasible, kUnbounded, kRestart };

  void refactor();
  void adopt(const Basis& basis);
  void compute_basic_values();
  void ftran(std::vector<double>& x) const;
  void btran(std::vector<double>& y) const;
  void column(int j, std::vector<double>& dense) const;
  double dot_column(int j, const std::vector<double>& y) const;
  void compute_duals(const std::vector<double>& basic_costs,
                     std::vector<double>& duals) const;
  double reduced_cost(int j, const std::vector<double>& duals,
                      const std::vector<double>& costs) const;

  double primal_infeasibility(int j) const;
  double max_primal_infeasibility() const;
  bool dual_feasible_after_flips();
  void place_nonbasic(int j);

  Outcome run_primal(bool phase_one);
  Outcome run_dual();
  void pivot(int row, int entering, const std::vector<double>& alpha,
             double entering_step, double leaving_value, VarState leaving_state);
  void count_iteration();

  SimplexOptions options_;
  int n_ = 0;  // structural columns
  int m_ = 0;  // rows
  std::vector<int> col_start_;
  std::vector<int> row_index_;
  std::vector<double> value_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> cost_;
  double cost_constant_ = 0.0;

  std::vector<double> x_;
  std::vector<VarState> state_;
  std::vector<int> head_;
  std::vector<int> position_;  // row position if basic, else -1

  std::unique_ptr<Factor> factor_;
  std::vector<Eta> etas_;
  long factor_epoch_ = 0;  // incremented by every refactorization
  bool values_stale_ = true;
  bool trivially_infeasible_ = false;
  long iterations_ = 0;
  long iteration_limit_ = 0;  // per solve() call
  long solve_start_ = 0;
};

/// LP relaxation solve (integrality ignored) from the slack basis.
MilpSolution solve_lp(const MilpProblem& problem,
                      const SolveOptions& options = {});

}  // namespace ucr::milp
