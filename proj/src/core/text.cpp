// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include "ucr/core/text.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "ucr/core/error.hpp"
#include "ucr/core/timing.hpp"

namespace ucr {

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

double parse_double(std::string_view text, const std::string& location) {
  const std::string s = trim(text);
  double value = 0.0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty()) {
    throw ParseError(location, "expected a number, got '" + s + "'");
  }
  return value;
}

long parse_long(std::string_view text, const std::string& location) {
  const std::string s = trim(text);
  long value = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty()) {
    throw ParseError(location, "expected an integer, got '" + s + "'");
  }
  return value;
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(line.substr(start));
      return out;
    }
    out.emplace_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return std::string(text.substr(first, last - first + 1));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("write failed for " + path.string());
}

TimingMode parse_timing_mode(const std::string& text) {
  if (text == "wall") return TimingMode::kWall;
  if (text == "work") return TimingMode::kWork;
  throw ValidationError("timing mode must be 'wall' or 'work', got '" + text +
                        "'");
}

std::string to_string(TimingMode mode) {
  return mode == TimingMode::kWall ? "wall" : "work";
}

}  // namespace ucr
