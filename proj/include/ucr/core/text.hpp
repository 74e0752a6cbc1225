// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace ucr {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// Strict full-string parse; throws ParseError naming `location` on failure.
double parse_double(std::string_view text, const std::string& location);
long parse_long(std::string_view text, const std::string& location);

std::vector<std::string> split(std::string_view line, char sep);
std::string trim(std::string_view text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace ucr
