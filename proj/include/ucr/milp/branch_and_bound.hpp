// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ucr/milp/problem.hpp"

namespace ucr::milp {

/// Branch-and-bound over the binaries of `problem`.
///
/// Nodes are explored best-bound first (ties: most recently created), branching
/// on the most fractional binary (ties: lowest index) with the child matching
/// the rounding direction created last so it is explored first. A node is
/// pruned once incumbent - bound <= mip_gap * max(|incumbent|, 1e-10).
/// The status is kOptimal when the search closes without a gap-based prune
/// above the final bound, kFeasibleGapMet when the incumbent is within mip_gap
/// but not proven optimal, and kLimitReached when a node or time limit stops
/// the search. The result is a deterministic function of (problem, options).
MilpSolution solve_milp(const MilpProblem& problem,
                        const SolveOptions& options = {});

}  // namespace ucr::milp
