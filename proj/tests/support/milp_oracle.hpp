// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <istream>

#include "ucr/milp/problem.hpp"

namespace ucr::testing {

/// Minimum over every 0/1 assignment of the binaries of the LP over the
/// continuous variables; +inf when no assignment is feasible.
double enumerate_milp(const milp::MilpProblem& problem);

/// Random bounded MILP that is feasible by construction.
milp::MilpProblem random_milp(std::uint64_t seed, int binaries, int continuous,
                              int rows);

/// Whitespace-tokenized MPS reader covering what write_mps emits.
milp::MilpProblem read_mps(std::istream& in);

}  // namespace ucr::testing
