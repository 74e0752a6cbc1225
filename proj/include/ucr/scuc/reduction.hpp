// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "ucr/core/grid.hpp"
#include "ucr/milp/problem.hpp"
#include "ucr/scuc/builder.hpp"

namespace ucr::scuc {

/// Classification of every commitment variable u_{g,t}: fixed at `value`, or
/// flexible with `value` as its warm-start state.
struct ReductionPlan {
  BinaryMatrix fixed;  // 1 = fixed
  BinaryMatrix value;
  /// When false, flexible entries carry no warm start.
  bool warm_start = true;

  /// Nothing fixed and no warm start: applying it leaves the model unchanged.
  static ReductionPlan none(int generators, int periods);

  int generators() const { return static_cast<int>(fixed.rows()); }
  int periods() const { return static_cast<int>(fixed.cols()); }
  int fixed_count() const;
  int flexible_count() const { return static_cast<int>(fixed.size()) - fixed_count(); }
  bool operator==(const ReductionPlan&) const = default;
};

struct ReducedModel {
  milp::MilpProblem problem;
  std::optional<std::vector<double>> warm_start;
};

/// Fixes the plan's fixed u entries; start-up variables stay free. The warm
/// start assigns every u from the plan and derives v from it.
/// Throws DimensionError when the plan does not match the model.
ReducedModel apply_reduction(const ScucModel& model, const ReductionPlan& plan);

/// Plan fixing every entry of `on`.
ReductionPlan fix_all(const BinaryMatrix& on);

/// Cost of the best dispatch for a fixed commitment (start-ups derived from
/// the states), or nullopt when that commitment admits no feasible dispatch.
struct DispatchResult {
  double objective = 0.0;
  long lp_iterations = 0;
  std::vector<double> values;
};
std::optional<DispatchResult> dispatch_schedule(const ScucModel& model,
                                                const BinaryMatrix& on);

}  // namespace ucr::scuc
