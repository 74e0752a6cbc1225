// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>

#include "ucr/grid/power_system.hpp"

namespace ucr::grid {

/// Reads a system file (JSON, schema in docs/system_schema.md). Throws
/// ParseError with a line or field location, or ValidationError.
PowerSystem load_system(const std::filesystem::path& path);
PowerSystem parse_system(const std::string& text);

std::string serialize_system(const PowerSystem& system);
void save_system(const PowerSystem& system, const std::filesystem::path& path);

/// Reads a `bus,t1,...,tT` CSV. Every bus must appear exactly once.
LoadProfile load_profile(const std::filesystem::path& path,
                         const PowerSystem& system);
LoadProfile parse_profile(const std::string& text, const PowerSystem& system);

std::string serialize_profile(const LoadProfile& profile,
                              const PowerSystem& system);
void save_profile(const LoadProfile& profile, const PowerSystem& system,
                  const std::filesystem::path& path);

}  // namespace ucr::grid
