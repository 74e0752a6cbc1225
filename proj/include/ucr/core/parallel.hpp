// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <exception>

namespace ucr {

/// Selects between the OpenMP kernel and the serial reference path. Both
/// paths produce identical results; the serial one is kept for testing and
/// benchmarking.
enum class Execution { kSerial, kParallel };

void set_thread_count(int threads);
int thread_count();

/// Runs body(i) for i in [0, n). Iterations must be independent and write
/// only to their own output slots.
template <class Body>
void parallel_for(Execution exec, std::size_t n, Body&& body) {
  if (exec == Execution::kSerial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  // Exceptions cannot cross the OpenMP region; the one from the lowest index
  // is rethrown so the serial and parallel paths fail identically.
  const long count = static_cast<long>(n);
  std::exception_ptr error;
  long error_index = count;
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(ucr_parallel_for_error)
      if (i < error_index) {
        error_index = i;
        error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace ucr
