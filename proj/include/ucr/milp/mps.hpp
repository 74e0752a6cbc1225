// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <ostream>

#include "ucr/milp/problem.hpp"

namespace ucr::milp {

/// Fixed-format MPS. Columns and rows get generated 8-character names
/// (C0000001, R0000001) because fixed format cannot carry long names; the
/// original names are listed in leading comment lines. Binaries are wrapped in
/// INTORG/INTEND markers with BV (or FX when pre-fixed) bounds. The objective
/// constant is written as the negated RHS of the objective row.
void write_mps(const MilpProblem& problem, std::ostream& out);

/// Throws IoError when the file cannot be written.
void export_mps(const MilpProblem& problem, const std::filesystem::path& path);

}  // namespace ucr::milp
