// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "ucr/core/grid.hpp"
#include "ucr/core/parallel.hpp"
#include "ucr/core/timing.hpp"
#include "ucr/grid/power_system.hpp"
#include "ucr/milp/problem.hpp"

namespace ucr::fl {

/// One predicted commitment row to be made consistent with minimum up/down
/// time. Nothing carries over from before t = 1 except the state itself.
struct Instance {
  int generator = 0;
  int min_up = 1;
  int min_down = 1;
  int initial_state = 0;
  std::vector<std::uint8_t> row;

  int periods() const { return static_cast<int>(row.size()); }
  /// Throws ValidationError for empty rows, non-binary entries or times < 1.
  void validate() const;
};

struct Result {
  std::vector<std::uint8_t> on;
  std::vector<std::uint8_t> startup;
  int flips_up = 0;    // OFF -> ON corrections
  int flips_down = 0;  // ON -> OFF corrections
  /// Seconds, or simplex iterations under TimingMode::kWork.
  double solve_time = 0.0;
  bool skipped = false;

  int flips() const { return flips_up + flips_down; }
};

/// Minimum-flip repair as a MILP: variables u, v, up, down per period (in
/// that order, period-major), objective sum(up + down).
milp::MilpProblem build_repair_problem(const Instance& instance);

/// Solves the repair MILP. The all-ON and all-OFF rows are always feasible,
/// so a repair always exists.
Result repair_row(const Instance& instance, TimingMode timing = TimingMode::kWall,
                  const milp::SolveOptions& solver = {});

enum class SkipRule {
  kNone,
  /// Rows predicted ON (or OFF) in every period pass through unmodified.
  kConstantRows,
};

struct BatchOptions {
  SkipRule skip = SkipRule::kConstantRows;
  /// u at t = 0 per generator; empty means all OFF.
  std::vector<int> initial_state;
  TimingMode timing = TimingMode::kWall;
  Execution execution = Execution::kParallel;
  milp::SolveOptions solver;
};

struct SampleRepair {
  BinaryMatrix on;  // [generator x period]
  std::vector<Result> rows;
  /// Sum of the per-row solve times.
  double solve_time = 0.0;
  int flips() const;
};

/// Repairs every row of every sample independently. `predicted` holds one
/// [generator x period] label matrix per sample.
std::vector<SampleRepair> repair_batch(const std::vector<BinaryMatrix>& predicted,
                                       const grid::PowerSystem& system,
                                       const BatchOptions& options = {});

}  // namespace ucr::fl
