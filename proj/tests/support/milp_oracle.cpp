// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include "support/milp_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ucr/core/parallel.hpp"
#include "ucr/core/rng.hpp"
#include "ucr/core/text.hpp"
#include "ucr/milp/simplex.hpp"

namespace ucr::testing {

using milp::kInfinity;

double enumerate_milp(const milp::MilpProblem& problem) {
  const auto binaries = problem.binary_indices();
  const long count = 1L << binaries.size();
  std::vector<double> best(count, kInfinity);
  parallel_for(Execution::kParallel, static_cast<std::size_t>(count), [&](std::size_t mask) {
    std::vector<std::pair<int, double>> fix;
    for (std::size_t k = 0; k < binaries.size(); ++k) {
      const double v = (mask >> k) & 1;
      const auto& var = problem.variables[binaries[k]];
      if (v < var.lower || v > var.upper) return;
      fix.emplace_back(binaries[k], v);
    }
    const auto sol = milp::solve_lp(milp::fix_variables(problem, fix));
    if (sol.status == milp::SolveStatus::kOptimal) best[mask] = sol.objective;
  });
  return *std::min_element(best.begin(), best.end());
}

milp::MilpProblem random_milp(std::uint64_t seed, int binaries, int continuous,
                              int rows) {
  Rng rng(seed);
  milp::MilpProblem p;
  std::vector<double> point;
  for (int j = 0; j < binaries; ++j) {
    p.add_variable("b" + std::to_string(j), 0, 1, milp::VarType::kBinary,
                   std::round(rng.uniform(-10, 10)));
    point.push_back(static_cast<double>(rng.below(2)));
  }
  for (int j = 0; j < continuous; ++j) {
    const double up = std::round(rng.uniform(1, 10));
    p.add_variable("x" + std::to_string(j), 0, up, milp::VarType::kContinuous,
                   std::round(rng.uniform(-5, 5)));
    point.push_back(rng.uniform(0, up));
  }
  const int n = binaries + continuous;
  for (int i = 0; i < rows; ++i) {
    std::vector<milp::Term> terms;
    double activity = 0.0;
    for (int j = 0; j < n; ++j) {
      if (rng.uniform01() < 0.5) continue;
      const double a = std::round(rng.uniform(-6, 6));
      if (a == 0.0) continue;
      terms.push_back({j, a});
      activity += a * point[j];
    }
    const double slack = std::round(rng.uniform(0, 3));
    if (rng.below(2) == 0) {
      p.add_constraint("r" + std::to_string(i), terms, milp::Relation::kLessEqual,
                       std::ceil(activity) + slack);
    } else {
      p.add_constraint("r" + std::to_string(i), terms,
                       milp::Relation::kGreaterEqual, std::floor(activity) - slack);
    }
  }
  return p;
}

milp::MilpProblem read_mps(std::istream& in) {
  milp::MilpProblem p;
  std::map<std::string, int> cols;
  std::map<std::string, int> rows;
  std::string objective_row;
  std::string section;
  bool integer = false;
  std::string line;
  auto column = [&](const std::string& name) {
    auto it = cols.find(name);
    if (it != cols.end()) return it->second;
    const int j = p.add_variable(name, 0.0, kInfinity,
                                 integer ? milp::VarType::kBinary
                                         : milp::VarType::kContinuous);
    if (integer) p.variables[j].upper = kInfinity;
    cols[name] = j;
    return j;
  };
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '*') continue;
    std::istringstream tok(line);
    std::vector<std::string> f;
    for (std::string s; tok >> s;) f.push_back(s);
    if (f.empty()) continue;
    if (line[0] != ' ') {
      section = f[0];
      if (section == "ENDATA") break;
      continue;
    }
    if (section == "ROWS") {
      if (f[0] == "N") {
        objective_row = f[1];
        continue;
      }
      milp::Relation rel = milp::Relation::kLessEqual;
      if (f[0] == "E") rel = milp::Relation::kEqual;
      if (f[0] == "G") rel = milp::Relation::kGreaterEqual;
      rows[f[1]] = p.add_constraint(f[1], {}, rel, 0.0);
    } else if (section == "COLUMNS") {
      if (f.size() >= 3 && f[1] == "'MARKER'") {
        integer = f[2] == "'INTORG'";
        continue;
      }
      const int j = column(f[0]);
      for (std::size_t k = 1; k + 1 < f.size(); k += 2) {
        const double v = parse_double(f[k + 1], "mps");
        if (f[k] == objective_row) p.variables[j].cost = v;
        else p.constraints[rows.at(f[k])].terms.push_back({j, v});
      }
    } else if (section == "RHS") {
      for (std::size_t k = 1; k + 1 < f.size(); k += 2) {
        const double v = parse_double(f[k + 1], "mps");
        if (f[k] == objective_row) p.objective_constant = -v;
        else p.constraints[rows.at(f[k])].rhs = v;
      }
    } else if (section == "BOUNDS") {
      auto& var = p.variables[cols.at(f[2])];
      const std::string& code = f[0];
      if (code == "BV") {
        var.lower = 0;
        var.upper = 1;
        var.type = milp::VarType::kBinary;
      } else if (code == "FR") {
        var.lower = -kInfinity;
        var.upper = kInfinity;
      } else if (code == "MI") {
        var.lower = -kInfinity;
      } else {
        const double v = parse_double(f[3], "mps");
        if (code == "FX") var.lower = var.upper = v;
        else if (code == "LO") var.lower = v;
        else if (code == "UP") var.upper = v;
        else throw std::runtime_error("unknown bound type " + code);
      }
    }
  }
  // Integer columns without explicit bounds would default to [0, 1] only via
  // BV/FX in our writer, so any remaining infinite binary upper is an error.
  for (const auto& v : p.variables) {
    if (v.type == milp::VarType::kBinary && v.upper > 1.0) {
      throw std::runtime_error("integer column without binary bounds");
    }
  }
  return p;
}

}  // namespace ucr::testing
