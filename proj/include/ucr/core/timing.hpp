// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <string>

namespace ucr {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

/// What the "time" columns of persisted files contain. Wall-clock seconds
/// vary between runs; kWork records simplex iteration counts instead, which
/// makes every output file reproducible byte for byte.
enum class TimingMode { kWall, kWork };

TimingMode parse_timing_mode(const std::string& text);
std::string to_string(TimingMode mode);

}  // namespace ucr
