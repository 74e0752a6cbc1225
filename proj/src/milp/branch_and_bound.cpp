// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include "ucr/milp/branch_and_bound.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <queue>

#include "ucr/core/error.hpp"
#include "ucr/core/timing.hpp"
#include "ucr/milp/simplex.hpp"

namespace ucr::milp {
namespace {

struct Node {
  long id = 0;
  long parent = -1;
  double bound = -kInfinity;
  std::vector<std::int8_t> fixed;  // per binary: -1 free, else 0/1
  std::shared_ptr<const SimplexSolver::Basis> basis;
  // Branching that created this node, for pseudo-cost bookkeeping.
  int branched = -1;
  bool up = false;
  double distance = 0.0;
};

// Running per-unit objective gain of moving one binary down or up.
struct PseudoCost {
  double sum[2] = {0.0, 0.0};
  int count[2] = {0, 0};

  void record(bool up, double gain, double distance) {
    sum[up] += std::max(gain, 0.0) / distance;
    ++count[up];
  }
};

struct BranchChoice {
  int index = -1;
  double child_bound[2] = {-kInfinity, -kInfinity};  // down, up
};

struct NodeOrder {
  bool operator()(const std::shared_ptr<Node>& a,
                  const std::shared_ptr<Node>& b) const {
    if (a->bound != b->bound) return a->bound > b->bound;
    return a->id < b->id;
  }
};

double relative_gap(double objective, double bound) {
  if (!std::isfinite(objective) || !std::isfinite(bound)) return kInfinity;
  return std::abs(objective - bound) / std::max(std::abs(objective), 1e-10);
}

class BranchAndBound {
 public:
  BranchAndBound(const MilpProblem& problem, const SolveOptions& options)
      : problem_(problem), options_(options), binaries_(problem.binary_indices()) {
    SimplexOptions simplex;
    simplex.primal_tolerance =
        std::min(simplex.primal_tolerance, options.feasibility_tolerance);
    lp_ = std::make_unique<SimplexSolver>(problem, simplex);
    for (int j : binaries_) {
      base_lower_.push_back(problem.variables[j].lower);
      base_upper_.push_back(problem.variables[j].upper);
    }
    pseudo_.resize(binaries_.size());
  }

  MilpSolution run() {
    if (options_.warm_start) try_warm_start(*options_.warm_start);

    auto root = std::make_shared<Node>();
    root->id = next_id_++;
    root->fixed.assign(binaries_.size(), -1);
    open_.push(root);

    bool limited = false;
    bool unbounded = false;
    while (!open_.empty()) {
      if (nodes_ >= options_.node_limit || clock_.seconds() > options_.time_limit) {
        limited = true;
        break;
      }
      auto node = open_.top();
      open_.pop();
      if (prunable(node->bound)) {
        gap_pruned_ = std::min(gap_pruned_, node->bound);
        continue;
      }
      ++nodes_;
      if (!process(*node)) {
        unbounded = true;
        break;
      }
    }

    MilpSolution sol;
    sol.nodes_explored = nodes_;
    sol.lp_iterations = lp_->iterations();
    sol.incumbent_history = history_;
    if (has_incumbent()) {
      sol.values = incumbent_;
      sol.objective = incumbent_obj_;
    }
    if (unbounded) {
      sol.status = SolveStatus::kUnbounded;
      sol.objective = -kInfinity;
      sol.values.clear();
    } else if (limited) {
      double bound = gap_pruned_;
      if (!open_.empty()) bound = std::min(bound, open_.top()->bound);
      sol.bound = has_incumbent() ? std::min(bound, incumbent_obj_) : bound;
      sol.status = SolveStatus::kLimitReached;
    } else if (!has_incumbent()) {
      sol.status = SolveStatus::kInfeasible;
    } else {
      sol.bound = std::min(gap_pruned_, incumbent_obj_);
      const double slack = 1e-9 * std::max(1.0, std::abs(incumbent_obj_));
      sol.status = incumbent_obj_ - sol.bound <= slack ? SolveStatus::kOptimal
                                                       : SolveStatus::kFeasibleGapMet;
    }
    if (has_incumbent() && !unbounded) sol.gap = relative_gap(sol.objective, sol.bound);
    sol.solve_time = clock_.seconds();
    return sol;
  }

 private:
  bool has_incumbent() const { return !incumbent_.empty(); }

  bool prunable(double bound) const {
    if (!has_incumbent()) return false;
    const double tol =
        options_.mip_gap * std::max(std::abs(incumbent_obj_), 1e-10);
    return incumbent_obj_ - bound <= tol;
  }

  void apply_fixings(const std::vector<std::int8_t>& fixed) {
    for (std::size_t k = 0; k < binaries_.size(); ++k) {
      const double lo = fixed[k] < 0 ? base_lower_[k] : fixed[k];
      const double up = fixed[k] < 0 ? base_upper_[k] : fixed[k];
      lp_->set_column_bounds(binaries_[k], lo, up);
    }
  }

  SimplexSolver::Status solve_lp_robust() {
    try {
      return lp_->solve();
    } catch (const NumericalError&) {
      lp_->reset_to_slack_basis();
      return lp_->solve();
    }
  }

  void offer(std::vector<double> values) {
    for (int j : binaries_) values[j] = std::round(values[j]);
    const double obj = problem_.evaluate_objective(values);
    if (has_incumbent() && obj >= incumbent_obj_) return;
    incumbent_ = std::move(values);
    incumbent_obj_ = obj;
    history_.push_back(obj);
  }

  void try_warm_start(const std::vector<double>& warm) {
    if (static_cast<int>(warm.size()) != problem_.variable_count()) {
      throw DimensionError("warm start must assign every variable");
    }
    std::vector<std::int8_t> fixed(binaries_.size(), -1);
    for (std::size_t k = 0; k < binaries_.size(); ++k) {
      const double v = std::round(warm[binaries_[k]]);
      if (v < base_lower_[k] || v > base_upper_[k]) return;
      fixed[k] = static_cast<std::int8_t>(v);
    }
    apply_fixings(fixed);
    if (solve_lp_robust() == SimplexSolver::Status::kOptimal) {
      offer(lp_->primal_values());
    }
    last_solved_ = -1;
  }

  // Returns false when the LP relaxation is unbounded.
  bool process(const Node& node) {
    apply_fixings(node.fixed);
    if (node.parent != last_solved_ && node.basis) lp_->load_basis(*node.basis);
    const auto status = solve_lp_robust();
    last_solved_ = node.id;
    if (status == SimplexSolver::Status::kUnbounded) return false;
    if (status == SimplexSolver::Status::kInfeasible) return true;
    const double obj = lp_->objective();
    if (node.branched >= 0) {
      pseudo_[node.branched].record(node.up, obj - node.bound, node.distance);
    }
    if (prunable(obj)) {
      gap_pruned_ = std::min(gap_pruned_, obj);
      return true;
    }

    std::vector<double> x = lp_->primal_values();
    std::vector<int> fractional;
    for (std::size_t k = 0; k < binaries_.size(); ++k) {
      const double v = x[binaries_[k]];
      if (std::min(v - std::floor(v), std::ceil(v) - v) > options_.integrality_tolerance) {
        fractional.push_back(static_cast<int>(k));
      }
    }
    if (fractional.empty()) {
      offer(std::move(x));
      return true;
    }

    auto basis = std::make_shared<const SimplexSolver::Basis>(lp_->basis());
    const BranchChoice choice =
        options_.branching == BranchRule::kMostFractional
            ? most_fractional(x, fractional)
            : reliability_branch(node, x, obj, fractional);
    const int branch = choice.index;
    const double value = x[binaries_[branch]];
    const bool up_first = value >= 0.5;
    for (int pass = 0; pass < 2; ++pass) {
      // The second child gets the larger id and is therefore popped first.
      const bool up = (pass == 1) == up_first;
      const double bound = std::max(obj, choice.child_bound[up]);
      if (!std::isfinite(bound) || prunable(bound)) {
        if (std::isfinite(bound)) gap_pruned_ = std::min(gap_pruned_, bound);
        continue;
      }
      auto child = std::make_shared<Node>();
      child->id = next_id_++;
      child->parent = node.id;
      child->bound = obj;
      child->fixed = node.fixed;
      child->fixed[branch] = up ? 1 : 0;
      child->basis = basis;
      child->branched = branch;
      child->up = up;
      child->distance = up ? 1.0 - value : value;
      child->bound = bound;
      open_.push(std::move(child));
    }
    return true;
  }

  BranchChoice most_fractional(const std::vector<double>& x,
                               const std::vector<int>& fractional) const {
    BranchChoice choice;
    double most = -1.0;
    for (int k : fractional) {
      const double v = x[binaries_[k]];
      const double frac = std::min(v - std::floor(v), std::ceil(v) - v);
      if (frac > most) {
        most = frac;
        choice.index = k;
      }
    }
    return choice;
  }

  // Average per-unit gain over all binaries with observations in a direction;
  // stands in for binaries that have none yet.
  double average_pseudo(bool up) const {
    double sum = 0.0;
    int n = 0;
    for (const PseudoCost& p : pseudo_) {
      if (p.count[up] > 0) {
        sum += p.sum[up] / p.count[up];
        ++n;
      }
    }
    return n > 0 ? sum / n : 1.0;
  }

  static double score(double down, double up) {
    constexpr double kFloor = 1e-6;
    return std::max(down, kFloor) * std::max(up, kFloor);
  }

  BranchChoice reliability_branch(const Node& node, const std::vector<double>& x,
                                  double obj, const std::vector<int>& fractional) {
    const double avg[2] = {average_pseudo(false), average_pseudo(true)};
    BranchChoice best;
    double best_score = -1.0;
    std::vector<std::pair<double, int>> unreliable;
    for (int k : fractional) {
      const PseudoCost& p = pseudo_[k];
      const double f = x[binaries_[k]];
      if (std::min(p.count[0], p.count[1]) < options_.reliability) {
        unreliable.emplace_back(-std::min(f, 1.0 - f), k);
      }
      double gain[2];
      for (int up = 0; up < 2; ++up) {
        const double unit = p.count[up] > 0 ? p.sum[up] / p.count[up] : avg[up];
        gain[up] = unit * (up ? 1.0 - f : f);
      }
      const double sc = score(gain[0], gain[1]);
      if (sc > best_score) {
        best_score = sc;
        best.index = k;
      }
    }
    if (unreliable.empty() || options_.strong_candidates == 0) return best;

    // Strong branching on the most fractional unreliable candidates; its
    // scores replace the pseudo-cost estimates for those binaries.
    std::stable_sort(unreliable.begin(), unreliable.end());
    if (static_cast<int>(unreliable.size()) > options_.strong_candidates) {
      unreliable.resize(options_.strong_candidates);
    }
    std::sort(unreliable.begin(), unreliable.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    const SimplexSolver::Checkpoint point = lp_->checkpoint();
    BranchChoice strong;
    double strong_score = -1.0;
    for (const auto& entry : unreliable) {
      const int k = entry.second;
      const double f = x[binaries_[k]];
      double child[2];
      for (int up = 0; up < 2; ++up) {
        lp_->set_column_bounds(binaries_[k], up, up);
        const auto status = solve_lp_robust();
        child[up] = status == SimplexSolver::Status::kOptimal ? lp_->objective()
                                                              : kInfinity;
        if (std::isfinite(child[up])) {
          pseudo_[k].record(up, child[up] - obj, up ? 1.0 - f : f);
        }
        lp_->set_column_bounds(binaries_[k], base_lower_[k], base_upper_[k]);
        lp_->restore(point);
      }
      const double sc = score(child[0] - obj, child[1] - obj);
      if (sc > strong_score) {
        strong_score = sc;
        strong.index = k;
        strong.child_bound[0] = child[0];
        strong.child_bound[1] = child[1];
      }
    }
    last_solved_ = node.id;
    // A reliable candidate may still beat every strong-branched one.
    if (best_score > strong_score && pseudo_reliable(best.index)) return best;
    return strong;
  }

  bool pseudo_reliable(int k) const {
    return std::min(pseudo_[k].count[0], pseudo_[k].count[1]) >= options_.reliability;
  }

  const MilpProblem& problem_;
  const SolveOptions& options_;
  std::vector<int> binaries_;
  std::vector<double> base_lower_;
  std::vector<double> base_upper_;
  std::vector<PseudoCost> pseudo_;
  std::unique_ptr<SimplexSolver> lp_;
  std::priority_queue<std::shared_ptr<Node>, std::vector<std::shared_ptr<Node>>,
                      NodeOrder>
      open_;
  std::vector<double> incumbent_;
  double incumbent_obj_ = kInfinity;
  std::vector<double> history_;
  double gap_pruned_ = kInfinity;
  long next_id_ = 0;
  long last_solved_ = -1;
  long nodes_ = 0;
  Stopwatch clock_;
};

}  // namespace

MilpSolution solve_milp(const MilpProblem& problem, const SolveOptions& options) {
  options.validate();
  problem.validate();
  return BranchAndBound(problem, options).run();
}

}  // namespace ucr::milp
