// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include "ucr/milp/mps.hpp"

#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "ucr/core/error.hpp"
#include "ucr/core/text.hpp"

namespace ucr::milp {
namespace {

std::string column_name(int j) { return fmt::format("C{:07d}", j + 1); }
std::string row_name(int i) { return fmt::format("R{:07d}", i + 1); }

// Fixed format allows 12 characters per numeric field.
std::string number(double v) {
  std::string s = format_double(v);
  for (int precision = 11; s.size() > 12 && precision > 0; --precision) {
    s = fmt::format("{:.{}g}", v, precision);
  }
  return s;
}

// Field layout: 2-3 type, 5-12 name, 15-22 name, 25-36 value.
std::string entry(const std::string& code, const std::string& first,
                  const std::string& second, double value) {
  return fmt::format(" {:<2} {:<8}  {:<8}  {:>12}\n", code, first, second,
                     number(value));
}

}  // namespace

void write_mps(const MilpProblem& problem, std::ostream& out) {
  problem.validate();
  out << "* " << problem.name << '\n';
  for (int j = 0; j < problem.variable_count(); ++j) {
    out << "* " << column_name(j) << ' ' << problem.variables[j].name << '\n';
  }
  for (int i = 0; i < problem.constraint_count(); ++i) {
    out << "* " << row_name(i) << ' ' << problem.constraints[i].name << '\n';
  }
  out << fmt::format("{:<14}{}\n", "NAME", "UCR");
  out << "ROWS\n";
  out << " N  OBJ\n";
  for (int i = 0; i < problem.constraint_count(); ++i) {
    const char* code = "L";
    if (problem.constraints[i].relation == Relation::kEqual) code = "E";
    if (problem.constraints[i].relation == Relation::kGreaterEqual) code = "G";
    out << fmt::format(" {:<2} {}\n", code, row_name(i));
  }

  std::vector<std::vector<std::pair<int, double>>> columns(problem.variable_count());
  for (int i = 0; i < problem.constraint_count(); ++i) {
    for (const Term& t : problem.constraints[i].terms) {
      if (t.coef != 0.0) columns[t.var].emplace_back(i, t.coef);
    }
  }

  out << "COLUMNS\n";
  bool in_integer_block = false;
  int marker = 0;
  for (int j = 0; j < problem.variable_count(); ++j) {
    const bool binary = problem.variables[j].type == VarType::kBinary;
    if (binary != in_integer_block) {
      out << fmt::format("    M{:07d}  'MARKER'                 '{}'\n",
                         ++marker, binary ? "INTORG" : "INTEND");
      in_integer_block = binary;
    }
    const std::string name = column_name(j);
    const double cost = problem.variables[j].cost;
    if (cost != 0.0 || columns[j].empty()) out << entry("", name, "OBJ", cost);
    for (const auto& [row, coef] : columns[j]) {
      out << entry("", name, row_name(row), coef);
    }
  }
  if (in_integer_block) {
    out << fmt::format("    M{:07d}  'MARKER'                 'INTEND'\n",
                       ++marker);
  }

  out << "RHS\n";
  if (problem.objective_constant != 0.0) {
    out << entry("", "RHS", "OBJ", -problem.objective_constant);
  }
  for (int i = 0; i < problem.constraint_count(); ++i) {
    if (problem.constraints[i].rhs != 0.0) {
      out << entry("", "RHS", row_name(i), problem.constraints[i].rhs);
    }
  }

  out << "BOUNDS\n";
  for (int j = 0; j < problem.variable_count(); ++j) {
    const Variable& v = problem.variables[j];
    const std::string name = column_name(j);
    if (v.lower == v.upper) {
      out << entry("FX", "BND", name, v.lower);
      continue;
    }
    if (v.type == VarType::kBinary && v.lower == 0.0 && v.upper == 1.0) {
      out << fmt::format(" BV BND       {}\n", name);
      continue;
    }
    const bool lower_finite = std::isfinite(v.lower);
    const bool upper_finite = std::isfinite(v.upper);
    if (!lower_finite && !upper_finite) {
      out << fmt::format(" FR BND       {}\n", name);
      continue;
    }
    if (!lower_finite) out << fmt::format(" MI BND       {}\n", name);
    else if (v.lower != 0.0) out << entry("LO", "BND", name, v.lower);
    if (upper_finite) out << entry("UP", "BND", name, v.upper);
  }
  out << "ENDATA\n";
}

void export_mps(const MilpProblem& problem, const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  write_mps(problem, out);
  out.flush();
  if (!out) throw IoError(fmt::format("failed writing '{}'", path.string()));
}

}  // namespace ucr::milp
