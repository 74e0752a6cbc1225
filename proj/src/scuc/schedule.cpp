// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include "ucr/scuc/schedule.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "ucr/core/error.hpp"

namespace ucr::scuc {

void InitialConditions::validate(const grid::PowerSystem& system) const {
  const auto g_count = static_cast<std::size_t>(system.generator_count());
  auto check_size = [&](std::size_t size, const char* what) {
    if (size != 0 && size != g_count) {
      throw DimensionError(fmt::format("initial {} has {} entries for {} generators",
                                       what, size, g_count));
    }
  };
  check_size(state.size(), "state");
  check_size(duration.size(), "duration");
  check_size(dispatch.size(), "dispatch");
  for (std::size_t g = 0; g < state.size(); ++g) {
    if (state[g] != 0 && state[g] != 1) {
      throw ValidationError(fmt::format("initial state of generator {} must be 0 or 1",
                                        system.generator(static_cast<int>(g)).id));
    }
  }
  for (std::size_t g = 0; g < dispatch.size(); ++g) {
    const auto& gen = system.generator(static_cast<int>(g));
    const bool on = state_of(static_cast<int>(g)) == 1;
    if (dispatch[g] < 0.0 || (!on && dispatch[g] != 0.0) ||
        (on && dispatch[g] > gen.p_max)) {
      throw ValidationError(fmt::format(
          "initial dispatch {} of generator {} is inconsistent with its state",
          dispatch[g], gen.id));
    }
  }
}

CommitmentSchedule CommitmentSchedule::from_states(BinaryMatrix on,
                                                   const InitialConditions& initial) {
  CommitmentSchedule s;
  s.startup = BinaryMatrix(on.rows(), on.cols());
  for (std::size_t g = 0; g < on.rows(); ++g) {
    int prev = initial.state_of(static_cast<int>(g));
    for (std::size_t t = 0; t < on.cols(); ++t) {
      s.startup(g, t) = on(g, t) > prev ? 1 : 0;
      prev = on(g, t);
    }
  }
  s.on = std::move(on);
  return s;
}

int carry_over_periods(int min_up, int min_down, int initial_state,
                       int initial_duration, int horizon) {
  if (initial_duration < 0) return 0;
  const int required = initial_state == 1 ? min_up : min_down;
  return std::clamp(required - initial_duration, 0, horizon);
}

std::vector<UpDownViolation> check_row(std::span<const std::uint8_t> row,
                                       int min_up, int min_down,
                                       int initial_state, int initial_duration) {
  const int T = static_cast<int>(row.size());
  std::vector<int> v(T);
  int prev = initial_state;
  for (int t = 0; t < T; ++t) {
    v[t] = row[t] > prev ? 1 : 0;
    prev = row[t];
  }
  std::vector<UpDownViolation> out;
  const int carry =
      carry_over_periods(min_up, min_down, initial_state, initial_duration, T);
  for (int t = 0; t < carry; ++t) {
    if (row[t] != initial_state) out.push_back({0, t, UpDownRule::kCarryOver});
  }
  // 1-based period p maps to index p - 1.
  for (int p = std::max(min_up, 1); p <= T; ++p) {
    int starts = 0;
    for (int q = p - min_up + 1; q <= p; ++q) starts += v[q - 1];
    if (starts > row[p - 1]) out.push_back({0, p - 1, UpDownRule::kMinUp});
  }
  for (int p = 1; p <= T - min_down; ++p) {
    int starts = 0;
    for (int q = p + 1; q <= p + min_down; ++q) starts += v[q - 1];
    if (starts > 1 - row[p - 1]) out.push_back({0, p - 1, UpDownRule::kMinDown});
  }
  return out;
}

std::vector<UpDownViolation> check_min_updown(const CommitmentSchedule& schedule,
                                              const grid::PowerSystem& system,
                                              const InitialConditions& initial) {
  if (schedule.generators() != system.generator_count() ||
      schedule.periods() != system.horizon()) {
    throw DimensionError(fmt::format(
        "schedule is {}x{} but the system has {} generators and {} periods",
        schedule.generators(), schedule.periods(), system.generator_count(),
        system.horizon()));
  }
  std::vector<UpDownViolation> out;
  for (int g = 0; g < schedule.generators(); ++g) {
    const auto& gen = system.generator(g);
    for (auto violation :
         check_row(schedule.on.row(g), gen.min_up, gen.min_down,
                   initial.state_of(g), initial.duration_of(g))) {
      violation.generator = g;
      out.push_back(violation);
    }
  }
  return out;
}

}  // namespace ucr::scuc
