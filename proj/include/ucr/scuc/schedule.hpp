// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ucr/core/grid.hpp"
#include "ucr/grid/power_system.hpp"

namespace ucr::scuc {

/// Conditions at t = 0 for every generator.
struct InitialConditions {
  /// u at t = 0 per generator; empty means every unit starts OFF.
  std::vector<int> state;
  /// Periods each unit has already spent in its initial state; empty or a
  /// negative entry means long enough that no carry-over up/down time binds.
  std::vector<int> duration;
  /// Output at t = 0 in MW; empty means 0.
  std::vector<double> dispatch;

  int state_of(int g) const { return state.empty() ? 0 : state[g]; }
  int duration_of(int g) const { return duration.empty() ? -1 : duration[g]; }
  double dispatch_of(int g) const { return dispatch.empty() ? 0.0 : dispatch[g]; }

  /// Throws DimensionError/ValidationError when inconsistent with the system.
  void validate(const grid::PowerSystem& system) const;
};

/// Commitment states u [generator x period] and start-up indicators v.
struct CommitmentSchedule {
  BinaryMatrix on;
  BinaryMatrix startup;

  int generators() const { return static_cast<int>(on.rows()); }
  int periods() const { return static_cast<int>(on.cols()); }

  /// Start-ups implied by the states: v_t = max(0, u_t - u_{t-1}).
  static CommitmentSchedule from_states(BinaryMatrix on,
                                        const InitialConditions& initial = {});
  bool operator==(const CommitmentSchedule&) const = default;
};

enum class UpDownRule : std::uint8_t { kMinUp, kMinDown, kCarryOver };

struct UpDownViolation {
  int generator = 0;
  int period = 0;  // 0-based
  UpDownRule rule = UpDownRule::kMinUp;
  bool operator==(const UpDownViolation&) const = default;
};

/// Periods (0-based) of one row where the up/down-time rows fail, with start-ups
/// taken as max(0, u_t - u_{t-1}). Minimum up time is checked for t >= UT as
/// sum_{q=t-UT+1..t} v_q <= u_t, minimum down time for t <= T-DT as
/// sum_{q=t+1..t+DT} v_q <= 1 - u_t (1-based t). A unit still inside its
/// initial up (down) time must stay ON (OFF); breaches report kCarryOver.
std::vector<UpDownViolation> check_row(std::span<const std::uint8_t> row,
                                       int min_up, int min_down,
                                       int initial_state = 0,
                                       int initial_duration = -1);

/// Every (g, t) where the schedule breaks minimum up/down logic; empty iff
/// feasible.
std::vector<UpDownViolation> check_min_updown(const CommitmentSchedule& schedule,
                                              const grid::PowerSystem& system,
                                              const InitialConditions& initial = {});

/// Periods at the start of the horizon during which a unit must keep its
/// initial state; 0 when nothing carries over.
int carry_over_periods(int min_up, int min_down, int initial_state,
                       int initial_duration, int horizon);

}  // namespace ucr::scuc
