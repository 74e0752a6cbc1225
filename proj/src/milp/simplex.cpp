// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include "ucr/milp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <fmt/format.h>

#include "ucr/core/error.hpp"
#include "ucr/core/timing.hpp"

namespace ucr::milp {

struct SimplexSolver::Factor {
  Eigen::SparseMatrix<double> matrix;
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
};

SimplexSolver::SimplexSolver(const MilpProblem& problem, SimplexOptions options)
    : options_(options), n_(problem.variable_count()) {
  problem.validate();

  // Merge duplicate terms and drop empty rows.
  std::vector<std::vector<std::pair<int, double>>> columns(n_);
  std::vector<double> row_lower;
  std::vector<double> row_upper;
  for (const Constraint& c : problem.constraints) {
    std::map<int, double> merged;
    for (const Term& t : c.terms) merged[t.var] += t.coef;
    std::erase_if(merged, [](const auto& kv) { return kv.second == 0.0; });
    double lo = -kInfinity;
    double up = kInfinity;
    if (c.relation != Relation::kLessEqual) lo = c.rhs;
    if (c.relation != Relation::kGreaterEqual) up = c.rhs;
    if (merged.empty()) {
      if (lo > options_.primal_tolerance || up < -options_.primal_tolerance) {
        trivially_infeasible_ = true;
      }
      continue;
    }
    for (const auto& [var, coef] : merged) columns[var].emplace_back(m_, coef);
    row_lower.push_back(lo);
    row_upper.push_back(up);
    ++m_;
  }

  col_start_.assign(n_ + 1, 0);
  for (int j = 0; j < n_; ++j) {
    col_start_[j + 1] = col_start_[j] + static_cast<int>(columns[j].size());
  }
  row_index_.reserve(col_start_[n_]);
  value_.reserve(col_start_[n_]);
  for (const auto& col : columns) {
    for (const auto& [row, coef] : col) {
      row_index_.push_back(row);
      value_.push_back(coef);
    }
  }

  const int total = n_ + m_;
  lower_.resize(total);
  upper_.resize(total);
  cost_.assign(total, 0.0);
  for (int j = 0; j < n_; ++j) {
    lower_[j] = problem.variables[j].lower;
    upper_[j] = problem.variables[j].upper;
    cost_[j] = problem.variables[j].cost;
  }
  for (int i = 0; i < m_; ++i) {
    lower_[n_ + i] = row_lower[i];
    upper_[n_ + i] = row_upper[i];
  }
  cost_constant_ = problem.objective_constant;
  iteration_limit_ = options_.iteration_limit > 0
                         ? options_.iteration_limit
                         : 50L * (n_ + m_) + 10000;

  x_.assign(total, 0.0);
  state_.assign(total, VarState::kAtLower);
  position_.assign(total, -1);
  head_.assign(m_, -1);
  factor_ = std::make_unique<Factor>();
  reset_to_slack_basis();
}

SimplexSolver::~SimplexSolver() = default;

void SimplexSolver::place_nonbasic(int j) {
  const bool has_lower = std::isfinite(lower_[j]);
  const bool has_upper = std::isfinite(upper_[j]);
  if (has_lower && has_upper) {
    const bool prefer_upper = cost_[j] < 0.0 && lower_[j] != upper_[j];
    state_[j] = prefer_upper ? VarState::kAtUpper : VarState::kAtLower;
  } else if (has_lower) {
    state_[j] = VarState::kAtLower;
  } else if (has_upper) {
    state_[j] = VarState::kAtUpper;
  } else {
    state_[j] = VarState::kFree;
  }
  switch (state_[j]) {
    case VarState::kAtLower: x_[j] = lower_[j]; break;
    case VarState::kAtUpper: x_[j] = upper_[j]; break;
    default: x_[j] = 0.0; break;
  }
}

void SimplexSolver::reset_to_slack_basis() {
  for (int j = 0; j < n_ + m_; ++j) position_[j] = -1;
  for (int j = 0; j < n_; ++j) place_nonbasic(j);
  for (int i = 0; i < m_; ++i) {
    head_[i] = n_ + i;
    state_[n_ + i] = VarState::kBasic;
    position_[n_ + i] = i;
  }
  refactor();
}

void SimplexSolver::refactor() {
  etas_.clear();
  ++factor_epoch_;
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(m_) * 3);
  for (int i = 0; i < m_; ++i) {
    const int j = head_[i];
    if (j >= n_) {
      triplets.emplace_back(j - n_, i, -1.0);
    } else {
      for (int p = col_start_[j]; p < col_start_[j + 1]; ++p) {
        triplets.emplace_back(row_index_[p], i, value_[p]);
      }
    }
  }
  factor_->matrix.resize(m_, m_);
  factor_->matrix.setFromTriplets(triplets.begin(), triplets.end());
  factor_->matrix.makeCompressed();
  bool ok = true;
  if (m_ > 0) {
    factor_->lu.analyzePattern(factor_->matrix);
    factor_->lu.factorize(factor_->matrix);
    ok = factor_->lu.info() == Eigen::Success;
  }
  if (!ok) {
    // Singular basis: fall back to the slack basis, which is always regular.
    for (int j = 0; j < n_ + m_; ++j) {
      if (state_[j] == VarState::kBasic && j < n_) place_nonbasic(j);
      position_[j] = -1;
    }
    for (int i = 0; i < m_; ++i) {
      head_[i] = n_ + i;
      state_[n_ + i] = VarState::kBasic;
      position_[n_ + i] = i;
    }
    refactor();
    return;
  }
  values_stale_ = true;
}

void SimplexSolver::ftran(std::vector<double>& x) const {
  if (m_ == 0) return;
  Eigen::Map<Eigen::VectorXd> v(x.data(), m_);
  Eigen::VectorXd solved = factor_->lu.solve(v);
  v = solved;
  for (const Eta& eta : etas_) {
    const double xr = x[eta.row] / eta.pivot;
    x[eta.row] = xr;
    if (xr == 0.0) continue;
    for (std::size_t k = 0; k < eta.index.size(); ++k) {
      x[eta.index[k]] -= eta.value[k] * xr;
    }
  }
}

void SimplexSolver::btran(std::vector<double>& y) const {
  if (m_ == 0) return;
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    double s = y[it->row];
    for (std::size_t k = 0; k < it->index.size(); ++k) {
      s -= it->value[k] * y[it->index[k]];
    }
    y[it->row] = s / it->pivot;
  }
  Eigen::Map<Eigen::VectorXd> v(y.data(), m_);
  Eigen::VectorXd solved = factor_->lu.transpose().solve(v);
  v = solved;
}

void SimplexSolver::column(int j, std::vector<double>& dense) const {
  dense.assign(m_, 0.0);
  if (j >= n_) {
    dense[j - n_] = -1.0;
    return;
  }
  for (int p = col_start_[j]; p < col_start_[j + 1]; ++p) {
    dense[row_index_[p]] = value_[p];
  }
}

double SimplexSolver::dot_column(int j, const std::vector<double>& y) const {
  if (j >= n_) return -y[j - n_];
  double s = 0.0;
  for (int p = col_start_[j]; p < col_start_[j + 1]; ++p) {
    s += value_[p] * y[row_index_[p]];
  }
  return s;
}

void SimplexSolver::compute_basic_values() {
  std::vector<double> rhs(m_, 0.0);
  for (int j = 0; j < n_; ++j) {
    if (state_[j] == VarState::kBasic || x_[j] == 0.0) continue;
    for (int p = col_start_[j]; p < col_start_[j + 1]; ++p) {
      rhs[row_index_[p]] -= value_[p] * x_[j];
    }
  }
  for (int i = 0; i < m_; ++i) {
    if (state_[n_ + i] != VarState::kBasic) rhs[i] += x_[n_ + i];
  }
  ftran(rhs);
  for (int i = 0; i < m_; ++i) x_[head_[i]] = rhs[i];
  values_stale_ = false;
}

void SimplexSolver::compute_duals(const std::vector<double>& basic_costs,
                                  std::vector<double>& duals) const {
  duals = basic_costs;
  btran(duals);
}

double SimplexSolver::reduced_cost(int j, const std::vector<double>& duals,
                                   const std::vector<double>& costs) const {
  return costs[j] - dot_column(j, duals);
}

double SimplexSolver::primal_infeasibility(int j) const {
  return std::max({0.0, lower_[j] - x_[j], x_[j] - upper_[j]});
}

double SimplexSolver::max_primal_infeasibility() const {
  double worst = 0.0;
  for (int i = 0; i < m_; ++i) {
    worst = std::max(worst, primal_infeasibility(head_[i]));
  }
  return worst;
}

void SimplexSolver::set_column_bounds(int j, double lower, double upper) {
  if (lower_[j] == lower && upper_[j] == upper) return;
  lower_[j] = lower;
  upper_[j] = upper;
  if (state_[j] == VarState::kBasic) return;
  const double before = x_[j];
  if (state_[j] == VarState::kAtLower && std::isfinite(lower)) {
    x_[j] = lower;
  } else if (state_[j] == VarState::kAtUpper && std::isfinite(upper)) {
    x_[j] = upper;
  } else {
    place_nonbasic(j);
  }
  if (x_[j] != before) values_stale_ = true;
}

void SimplexSolver::count_iteration() {
  if (++iterations_ - solve_start_ > iteration_limit_) {
    throw NumericalError(fmt::format(
        "simplex exceeded {} iterations without converging", iteration_limit_));
  }
}

void SimplexSolver::pivot(int row, int entering, const std::vector<double>& alpha,
                          double entering_step, double leaving_value,
                          VarState leaving_state) {
  if (entering_step != 0.0) {
    for (int i = 0; i < m_; ++i) {
      if (alpha[i] != 0.0) x_[head_[i]] -= alpha[i] * entering_step;
    }
  }
  x_[entering] += entering_step;
  const int leaving = head_[row];
  x_[leaving] = leaving_value;
  state_[leaving] = leaving_state;
  position_[leaving] = -1;
  head_[row] = entering;
  state_[entering] = VarState::kBasic;
  position_[entering] = row;

  Eta eta;
  eta.row = row;
  eta.pivot = alpha[row];
  for (int i = 0; i < m_; ++i) {
    if (i != row && std::abs(alpha[i]) > 1e-14) {
      eta.index.push_back(i);
      eta.value.push_back(alpha[i]);
    }
  }
  etas_.push_back(std::move(eta));
  if (static_cast<int>(etas_.size()) >= options_.refactor_interval) {
    refactor();
    compute_basic_values();
  }
}

bool SimplexSolver::dual_feasible_after_flips() {
  std::vector<double> cb(m_);
  for (int i = 0; i < m_; ++i) cb[i] = cost_[head_[i]];
  std::vector<double> y;
  compute_duals(cb, y);
  const double tol = options_.dual_tolerance;
  bool feasible = true;
  bool flipped = false;
  for (int j = 0; j < n_ + m_; ++j) {
    if (state_[j] == VarState::kBasic || lower_[j] == upper_[j]) continue;
    const double d = reduced_cost(j, y, cost_);
    const bool boxed = std::isfinite(lower_[j]) && std::isfinite(upper_[j]);
    if (state_[j] == VarState::kAtLower && d < -tol) {
      if (!boxed) {
        feasible = false;
        continue;
      }
      state_[j] = VarState::kAtUpper;
      x_[j] = upper_[j];
      flipped = true;
    } else if (state_[j] == VarState::kAtUpper && d > tol) {
      if (!boxed) {
        feasible = false;
        continue;
      }
      state_[j] = VarState::kAtLower;
      x_[j] = lower_[j];
      flipped = true;
    } else if (state_[j] == VarState::kFree && std::abs(d) > tol) {
      feasible = false;
    }
  }
  if (flipped) compute_basic_values();
  return feasible;
}

SimplexSolver::Outcome SimplexSolver::run_primal(bool phase_one) {
  const double ptol = options_.primal_tolerance;
  const double dtol = options_.dual_tolerance;
  const double pivtol = options_.pivot_tolerance;
  std::vector<double> cb(m_);
  std::vector<double> y;
  std::vector<double> alpha;
  std::vector<double> phase_costs;
  int degenerate_run = 0;

  while (true) {
    count_iteration();
    if (values_stale_) compute_basic_values();

    const std::vector<double>* costs = &cost_;
    if (phase_one) {
      phase_costs.assign(n_ + m_, 0.0);
      bool any = false;
      for (int i = 0; i < m_; ++i) {
        const int j = head_[i];
        if (x_[j] < lower_[j] - ptol) {
          phase_costs[j] = -1.0;
          any = true;
        } else if (x_[j] > upper_[j] + ptol) {
          phase_costs[j] = 1.0;
          any = true;
        }
      }
      if (!any) return Outcome::kDone;
      costs = &phase_costs;
    }
    for (int i = 0; i < m_; ++i) cb[i] = (*costs)[head_[i]];
    compute_duals(cb, y);

    const bool bland = degenerate_run > options_.stall_threshold;
    int entering = -1;
    double best = 0.0;
    double entering_d = 0.0;
    for (int j = 0; j < n_ + m_; ++j) {
      const VarState s = state_[j];
      if (s == VarState::kBasic || lower_[j] == upper_[j]) continue;
      const double d = reduced_cost(j, y, *costs);
      bool eligible = false;
      if (s == VarState::kAtLower) eligible = d < -dtol;
      else if (s == VarState::kAtUpper) eligible = d > dtol;
      else eligible = std::abs(d) > dtol;
      if (!eligible) continue;
      if (bland) {
        entering = j;
        entering_d = d;
        break;
      }
      if (std::abs(d) > best) {
        best = std::abs(d);
        entering = j;
        entering_d = d;
      }
    }
    if (entering < 0) {
      return phase_one ? Outcome::kInfeasible : Outcome::kDone;
    }

    const double dir = entering_d < 0.0 ? 1.0 : -1.0;
    column(entering, alpha);
    ftran(alpha);

    // Ratio test. Pass 1 finds the relaxed step bound, pass 2 picks the
    // largest pivot among rows reaching a bound within it (Harris).
    auto limit_of = [&](int i, bool relaxed, double& limit,
                        VarState& leave_state, double& leave_value) -> bool {
      const double a = alpha[i];
      if (std::abs(a) <= pivtol) return false;
      const double g = -a * dir;
      const int j = head_[i];
      const double xj = x_[j];
      const double slack = relaxed ? ptol : 0.0;
      if (phase_one && xj < lower_[j] - ptol) {
        if (g <= 0.0) return false;
        limit = (lower_[j] - xj) / g;
        leave_state = VarState::kAtLower;
        leave_value = lower_[j];
        return true;
      }
      if (phase_one && xj > upper_[j] + ptol) {
        if (g >= 0.0) return false;
        limit = (xj - upper_[j]) / -g;
        leave_state = VarState::kAtUpper;
        leave_value = upper_[j];
        return true;
      }
      if (g < 0.0 && std::isfinite(lower_[j])) {
        limit = (xj - lower_[j] + slack) / -g;
        leave_state = VarState::kAtLower;
        leave_value = lower_[j];
        return true;
      }
      if (g > 0.0 && std::isfinite(upper_[j])) {
        limit = (upper_[j] - xj + slack) / g;
        leave_state = VarState::kAtUpper;
        leave_value = upper_[j];
        return true;
      }
      return false;
    };

    double theta_max = kInfinity;
    double limit = 0.0;
    VarState leave_state{};
    double leave_value = 0.0;
    if (!bland) {
      for (int i = 0; i < m_; ++i) {
        if (limit_of(i, true, limit, leave_state, leave_value)) {
          theta_max = std::min(theta_max, limit);
        }
      }
    }
    int leave_row = -1;
    double theta = kInfinity;
    double best_pivot = 0.0;
    VarState chosen_state{};
    double chosen_value = 0.0;
    for (int i = 0; i < m_; ++i) {
      if (!limit_of(i, false, limit, leave_state, leave_value)) continue;
      limit = std::max(0.0, limit);
      if (bland) {
        const bool better =
            leave_row < 0 || limit < theta - 1e-12 ||
            (limit <= theta + 1e-12 && head_[i] < head_[leave_row]);
        if (better) {
          leave_row = i;
          theta = limit;
          chosen_state = leave_state;
          chosen_value = leave_value;
        }
      } else if (limit <= theta_max && std::abs(alpha[i]) > best_pivot) {
        best_pivot = std::abs(alpha[i]);
        leave_row = i;
        theta = limit;
        chosen_state = leave_state;
        chosen_value = leave_value;
      }
    }

    const double range = upper_[entering] - lower_[entering];
    if (leave_row < 0 && !std::isfinite(range)) {
      if (phase_one) {
        // Cannot happen in exact arithmetic; rebuild and retry.
        refactor();
        return Outcome::kRestart;
      }
      return Outcome::kUnbounded;
    }

    const double step_gain = std::abs(entering_d) * std::min(theta, range);
    degenerate_run = step_gain > 1e-12 ? 0 : degenerate_run + 1;

    if (std::isfinite(range) && (leave_row < 0 || range <= theta)) {
      // Bound flip: the entering variable crosses its box without a basis
      // change.
      const double step = dir * range;
      for (int i = 0; i < m_; ++i) {
        if (alpha[i] != 0.0) x_[head_[i]] -= alpha[i] * step;
      }
      if (state_[entering] == VarState::kAtLower) {
        state_[entering] = VarState::kAtUpper;
        x_[entering] = upper_[entering];
      } else {
        state_[entering] = VarState::kAtLower;
        x_[entering] = lower_[entering];
      }
      continue;
    }
    pivot(leave_row, entering, alpha, dir * theta, chosen_value, chosen_state);
  }
}

SimplexSolver::Outcome SimplexSolver::run_dual() {
  const double ptol = options_.primal_tolerance;
  const double dtol = options_.dual_tolerance;
  const double pivtol = options_.pivot_tolerance;
  std::vector<double> cb(m_);
  std::vector<double> y;
  std::vector<double> rho;
  std::vector<double> alpha;
  std::vector<double> row_alpha(n_ + m_, 0.0);
  std::vector<double> dj(n_ + m_, 0.0);
  std::vector<int> candidates;
  const long start_iterations = iterations_;
  const long dual_budget = 20L * (n_ + m_) + 1000;

  while (true) {
    if (iterations_ - start_iterations > dual_budget) return Outcome::kRestart;
    count_iteration();
    if (values_stale_) compute_basic_values();

    int r = -1;
    double worst = ptol;
    for (int i = 0; i < m_; ++i) {
      const double infeas = primal_infeasibility(head_[i]);
      if (infeas > worst) {
        worst = infeas;
        r = i;
      }
    }
    if (r < 0) return Outcome::kDone;

    const int leaving = head_[r];
    const bool raise = x_[leaving] < lower_[leaving];
    const double target = raise ? lower_[leaving] : upper_[leaving];
    const VarState leave_state = raise ? VarState::kAtLower : VarState::kAtUpper;

    rho.assign(m_, 0.0);
    rho[r] = 1.0;
    btran(rho);
    for (int i = 0; i < m_; ++i) cb[i] = cost_[head_[i]];
    compute_duals(cb, y);

    candidates.clear();
    double theta_max = kInfinity;
    for (int j = 0; j < n_ + m_; ++j) {
      const VarState s = state_[j];
      if (s == VarState::kBasic || lower_[j] == upper_[j]) continue;
      const double a = dot_column(j, rho);
      if (std::abs(a) <= pivtol) continue;
      bool eligible;
      if (s == VarState::kFree) {
        eligible = true;
      } else if (raise) {
        eligible = (s == VarState::kAtLower) ? a < 0.0 : a > 0.0;
      } else {
        eligible = (s == VarState::kAtLower) ? a > 0.0 : a < 0.0;
      }
      if (!eligible) continue;
      double d = reduced_cost(j, y, cost_);
      if (s == VarState::kAtLower) d = std::max(d, 0.0);
      else if (s == VarState::kAtUpper) d = std::min(d, 0.0);
      row_alpha[j] = a;
      dj[j] = std::abs(d);
      candidates.push_back(j);
      theta_max = std::min(theta_max, (dj[j] + dtol) / std::abs(a));
    }
    if (candidates.empty()) return Outcome::kInfeasible;

    int entering = -1;
    double best_pivot = 0.0;
    for (int j : candidates) {
      const double a = std::abs(row_alpha[j]);
      if (dj[j] / a <= theta_max && a > best_pivot) {
        best_pivot = a;
        entering = j;
      }
    }

    column(entering, alpha);
    ftran(alpha);
    const double a_rq = alpha[r];
    if (std::abs(a_rq - row_alpha[entering]) >
            1e-7 * (1.0 + std::abs(a_rq)) ||
        std::abs(a_rq) <= pivtol) {
      if (etas_.empty()) return Outcome::kRestart;
      refactor();
      continue;
    }
    const double step = (x_[leaving] - target) / a_rq;
    pivot(r, entering, alpha, step, target, leave_state);
  }
}

SimplexSolver::Status SimplexSolver::solve() {
  if (trivially_infeasible_) return Status::kInfeasible;
  solve_start_ = iterations_;
  if (values_stale_) compute_basic_values();
  bool rechecked_infeasible = false;

  for (int attempt = 0; attempt < 64; ++attempt) {
    if (max_primal_infeasibility() <= options_.primal_tolerance) {
      const Outcome out = run_primal(false);
      if (out == Outcome::kUnbounded) return Status::kUnbounded;
      if (out == Outcome::kRestart) continue;
      // Recompute the basic values from scratch; refactorize only if the
      // updated iterate has drifted out of feasibility.
      compute_basic_values();
      if (max_primal_infeasibility() <= options_.primal_tolerance) {
        return Status::kOptimal;
      }
      refactor();
      compute_basic_values();
      continue;
    }
    Outcome out;
    if (dual_feasible_after_flips()) {
      if (max_primal_infeasibility() <= options_.primal_tolerance) continue;
      out = run_dual();
    } else {
      out = run_primal(true);
    }
    if (out == Outcome::kInfeasible) {
      if (rechecked_infeasible) return Status::kInfeasible;
      // Confirm on a fresh factorization before declaring infeasibility.
      rechecked_infeasible = true;
      refactor();
      compute_basic_values();
    }
  }
  throw NumericalError("simplex failed to converge after repeated restarts");
}

double SimplexSolver::objective() const {
  double obj = cost_constant_;
  for (int j = 0; j < n_; ++j) obj += cost_[j] * x_[j];
  return obj;
}

std::vector<double> SimplexSolver::primal_values() const {
  return {x_.begin(), x_.begin() + n_};
}

std::vector<double> SimplexSolver::reduced_costs() {
  std::vector<double> cb(m_);
  for (int i = 0; i < m_; ++i) cb[i] = cost_[head_[i]];
  std::vector<double> y;
  compute_duals(cb, y);
  std::vector<double> d(n_ + m_, 0.0);
  for (int j = 0; j < n_ + m_; ++j) {
    if (state_[j] != VarState::kBasic) d[j] = reduced_cost(j, y, cost_);
  }
  return d;
}

SimplexSolver::Basis SimplexSolver::basis() const { return {head_, state_}; }

void SimplexSolver::load_basis(const Basis& basis) {
  adopt(basis);
  refactor();
}

void SimplexSolver::adopt(const Basis& basis) {
  head_ = basis.head;
  state_ = basis.state;
  std::fill(position_.begin(), position_.end(), -1);
  for (int i = 0; i < m_; ++i) position_[head_[i]] = i;
  for (int j = 0; j < n_ + m_; ++j) {
    switch (state_[j]) {
      case VarState::kBasic: break;
      case VarState::kAtLower:
        if (std::isfinite(lower_[j])) x_[j] = lower_[j];
        else place_nonbasic(j);
        break;
      case VarState::kAtUpper:
        if (std::isfinite(upper_[j])) x_[j] = upper_[j];
        else place_nonbasic(j);
        break;
      case VarState::kFree: x_[j] = 0.0; break;
    }
  }
  values_stale_ = true;
}

SimplexSolver::Checkpoint SimplexSolver::checkpoint() const {
  return {basis(), etas_.size(), factor_epoch_};
}

void SimplexSolver::restore(const Checkpoint& point) {
  if (point.epoch != factor_epoch_ || point.etas > etas_.size()) {
    load_basis(point.basis);
    return;
  }
  etas_.resize(point.etas);
  adopt(point.basis);
}

MilpSolution solve_lp(const MilpProblem& problem, const SolveOptions& options) {
  options.validate();
  Stopwatch clock;
  SimplexOptions simplex;
  simplex.primal_tolerance = std::min(simplex.primal_tolerance,
                                      options.feasibility_tolerance);
  SimplexSolver solver(problem, simplex);
  const auto status = solver.solve();
  MilpSolution sol;
  sol.lp_iterations = solver.iterations();
  switch (status) {
    case SimplexSolver::Status::kOptimal:
      sol.status = SolveStatus::kOptimal;
      sol.values = solver.primal_values();
      sol.objective = solver.objective();
      sol.bound = sol.objective;
      sol.gap = 0.0;
      break;
    case SimplexSolver::Status::kInfeasible:
      sol.status = SolveStatus::kInfeasible;
      break;
    case SimplexSolver::Status::kUnbounded:
      sol.status = SolveStatus::kUnbounded;
      sol.objective = -kInfinity;
      break;
  }
  sol.solve_time = clock.seconds();
  return sol;
}

}  // namespace ucr::milp
