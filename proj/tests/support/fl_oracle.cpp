// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include "support/fl_oracle.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "ucr/scuc/schedule.hpp"

namespace ucr::testing {

int exhaustive_min_flips(const fl::Instance& in) {
  const int T = in.periods();
  if (T > 20) throw std::invalid_argument("row too long to enumerate");
  std::uint32_t given = 0;
  for (int t = 0; t < T; ++t) given |= static_cast<std::uint32_t>(in.row[t]) << t;
  int best = T + 1;
  std::vector<std::uint8_t> row(T);
  for (std::uint32_t mask = 0; mask < (1u << T); ++mask) {
    const int flips = std::popcount(mask ^ given);
    if (flips >= best) continue;
    for (int t = 0; t < T; ++t) row[t] = (mask >> t) & 1u;
    if (scuc::check_row(row, in.min_up, in.min_down, in.initial_state).empty()) best = flips;
  }
  return best;
}

fl::Instance random_instance(Rng& rng, int periods, int max_time) {
  fl::Instance in;
  in.min_up = 1 + static_cast<int>(rng.below(max_time));
  in.min_down = 1 + static_cast<int>(rng.below(max_time));
  in.initial_state = static_cast<int>(rng.below(2));
  std::uint8_t state = static_cast<std::uint8_t>(rng.below(2));
  while (in.periods() < periods) {
    const int run = 1 + static_cast<int>(rng.below(std::max(2, max_time)));
    for (int k = 0; k < run && in.periods() < periods; ++k) in.row.push_back(state);
    state ^= 1;
  }
  return in;
}

}  // namespace ucr::testing
