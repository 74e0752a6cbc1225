// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include "ucr/core/parallel.hpp"

#include <omp.h>

namespace ucr {

void set_thread_count(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

int thread_count() { return omp_get_max_threads(); }

}  // namespace ucr
