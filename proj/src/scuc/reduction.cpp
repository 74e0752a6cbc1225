// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include "ucr/scuc/reduction.hpp"

#include <numeric>

#include <fmt/format.h>

#include "ucr/core/error.hpp"
#include "ucr/milp/simplex.hpp"

namespace ucr::scuc {

ReductionPlan ReductionPlan::none(int generators, int periods) {
  ReductionPlan plan;
  plan.fixed = BinaryMatrix(generators, periods);
  plan.value = BinaryMatrix(generators, periods);
  plan.warm_start = false;
  return plan;
}

int ReductionPlan::fixed_count() const {
  return std::accumulate(fixed.data().begin(), fixed.data().end(), 0);
}

ReductionPlan fix_all(const BinaryMatrix& on) {
  ReductionPlan plan;
  plan.fixed = BinaryMatrix(on.rows(), on.cols(), 1);
  plan.value = on;
  return plan;
}

namespace {

void check_shape(const ScucModel& model, std::size_t rows, std::size_t cols,
                 const char* what) {
  const auto& idx = model.index;
  if (rows != static_cast<std::size_t>(idx.generators()) ||
      cols != static_cast<std::size_t>(idx.periods())) {
    throw DimensionError(fmt::format("{} is {}x{} but the model has {} generators and {} periods",
                                     what, rows, cols, idx.generators(), idx.periods()));
  }
}

}  // namespace

ReducedModel apply_reduction(const ScucModel& model, const ReductionPlan& plan) {
  check_shape(model, plan.fixed.rows(), plan.fixed.cols(), "reduction plan");
  check_shape(model, plan.value.rows(), plan.value.cols(), "reduction plan values");
  const auto& idx = model.index;
  std::vector<std::pair<int, double>> fixings;
  for (int g = 0; g < idx.generators(); ++g) {
    for (int t = 0; t < idx.periods(); ++t) {
      if (plan.fixed(g, t)) fixings.emplace_back(idx.on(g, t), plan.value(g, t));
    }
  }
  ReducedModel out{milp::fix_variables(model.problem, fixings), std::nullopt};
  if (plan.warm_start) {
    const auto schedule =
        CommitmentSchedule::from_states(plan.value, model.options.initial);
    std::vector<double> warm(model.problem.variable_count(), 0.0);
    for (int g = 0; g < idx.generators(); ++g) {
      for (int t = 0; t < idx.periods(); ++t) {
        warm[idx.on(g, t)] = schedule.on(g, t);
        warm[idx.startup(g, t)] = schedule.startup(g, t);
      }
    }
    out.warm_start = std::move(warm);
  }
  return out;
}

std::optional<DispatchResult> dispatch_schedule(const ScucModel& model,
                                                const BinaryMatrix& on) {
  check_shape(model, on.rows(), on.cols(), "schedule");
  const auto& idx = model.index;
  const auto schedule = CommitmentSchedule::from_states(on, model.options.initial);
  std::vector<std::pair<int, double>> fixings;
  for (int g = 0; g < idx.generators(); ++g) {
    for (int t = 0; t < idx.periods(); ++t) {
      const auto& var = model.problem.variables[idx.on(g, t)];
      if (schedule.on(g, t) < var.lower || schedule.on(g, t) > var.upper) {
        return std::nullopt;
      }
      fixings.emplace_back(idx.on(g, t), schedule.on(g, t));
      fixings.emplace_back(idx.startup(g, t), schedule.startup(g, t));
    }
  }
  const auto sol = milp::solve_lp(milp::fix_variables(model.problem, fixings));
  if (sol.status != milp::SolveStatus::kOptimal) return std::nullopt;
  return DispatchResult{sol.objective, sol.lp_iterations, sol.values};
}

}  // namespace ucr::scuc
