// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include "ucr/fl/repair.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "ucr/core/error.hpp"
#include "ucr/milp/branch_and_bound.hpp"

namespace ucr::fl {
namespace {

using milp::Relation;
using milp::Term;
using milp::VarType;

constexpr int kU = 0;
constexpr int kV = 1;
constexpr int kUp = 2;
constexpr int kDown = 3;

int var(int t, int which) { return 4 * t + which; }

std::vector<std::uint8_t> startups(const std::vector<std::uint8_t>& on, int initial) {
  std::vector<std::uint8_t> v(on.size());
  int prev = initial;
  for (std::size_t t = 0; t < on.size(); ++t) {
    v[t] = on[t] > prev;
    prev = on[t];
  }
  return v;
}

bool constant_row(std::span<const std::uint8_t> row) {
  return std::all_of(row.begin(), row.end(), [&](std::uint8_t x) { return x == row[0]; });
}

}  // namespace

void Instance::validate() const {
  if (row.empty()) throw ValidationError("repair row is empty");
  if (min_up < 1 || min_down < 1) {
    throw ValidationError(fmt::format("generator {}: up/down times must be >= 1 (got {}, {})",
                                      generator, min_up, min_down));
  }
  if (initial_state != 0 && initial_state != 1) {
    throw ValidationError(fmt::format("generator {}: initial state must be 0 or 1", generator));
  }
  for (std::uint8_t x : row) {
    if (x > 1) throw ValidationError(fmt::format("generator {}: row is not binary", generator));
  }
}

milp::MilpProblem build_repair_problem(const Instance& in) {
  in.validate();
  const int T = in.periods();
  milp::MilpProblem p;
  p.name = fmt::format("repair_g{}", in.generator);
  for (int t = 0; t < T; ++t) {
    p.add_variable(fmt::format("u_{}", t + 1), 0, 1, VarType::kBinary);
    p.add_variable(fmt::format("v_{}", t + 1), 0, 1, VarType::kBinary);
    p.add_variable(fmt::format("up_{}", t + 1), 0, 1, VarType::kBinary, 1.0);
    p.add_variable(fmt::format("down_{}", t + 1), 0, 1, VarType::kBinary, 1.0);
  }
  for (int t = 0; t < T; ++t) {
    p.add_constraint(fmt::format("shift_{}", t + 1),
                     {{var(t, kU), 1}, {var(t, kUp), -1}, {var(t, kDown), 1}}, Relation::kEqual,
                     in.row[t]);
    p.add_constraint(fmt::format("one_way_{}", t + 1), {{var(t, kUp), 1}, {var(t, kDown), 1}},
                     Relation::kLessEqual, 1);
    if (t == 0) {
      p.add_constraint("startup_1", {{var(0, kV), 1}, {var(0, kU), -1}}, Relation::kGreaterEqual,
                       -in.initial_state);
    } else {
      p.add_constraint(fmt::format("startup_{}", t + 1),
                       {{var(t, kV), 1}, {var(t, kU), -1}, {var(t - 1, kU), 1}},
                       Relation::kGreaterEqual, 0);
    }
  }
  // 1-based t: min up for t >= UT, min down for t <= T - DT.
  for (int t = in.min_up; t <= T; ++t) {
    std::vector<Term> terms;
    for (int q = t - in.min_up + 1; q <= t; ++q) terms.push_back({var(q - 1, kV), 1});
    terms.push_back({var(t - 1, kU), -1});
    p.add_constraint(fmt::format("min_up_{}", t), std::move(terms), Relation::kLessEqual, 0);
  }
  for (int t = 1; t <= T - in.min_down; ++t) {
    std::vector<Term> terms;
    for (int q = t + 1; q <= t + in.min_down; ++q) terms.push_back({var(q - 1, kV), 1});
    terms.push_back({var(t - 1, kU), 1});
    p.add_constraint(fmt::format("min_down_{}", t), std::move(terms), Relation::kLessEqual, 1);
  }
  return p;
}

Result repair_row(const Instance& in, TimingMode timing, const milp::SolveOptions& solver) {
  const auto problem = build_repair_problem(in);
  const auto sol = milp::solve_milp(problem, solver);
  if (!sol.has_solution()) {
    throw NumericalError(fmt::format("generator {}: repair MILP returned {}", in.generator,
                                     milp::to_string(sol.status)));
  }
  Result r;
  const int T = in.periods();
  r.on.resize(T);
  for (int t = 0; t < T; ++t) {
    r.on[t] = sol.values[var(t, kU)] > 0.5;
    r.flips_up += r.on[t] > in.row[t];
    r.flips_down += r.on[t] < in.row[t];
  }
  r.startup = startups(r.on, in.initial_state);
  r.solve_time = timing == TimingMode::kWork ? static_cast<double>(sol.lp_iterations)
                                             : sol.solve_time;
  return r;
}

int SampleRepair::flips() const {
  int n = 0;
  for (const auto& r : rows) n += r.flips();
  return n;
}

std::vector<SampleRepair> repair_batch(const std::vector<BinaryMatrix>& predicted,
                                       const grid::PowerSystem& system,
                                       const BatchOptions& options) {
  const int G = system.generator_count();
  if (!options.initial_state.empty() && static_cast<int>(options.initial_state.size()) != G) {
    throw DimensionError(fmt::format("{} initial states for {} generators",
                                     options.initial_state.size(), G));
  }
  for (std::size_t m = 0; m < predicted.size(); ++m) {
    if (static_cast<int>(predicted[m].rows()) != G || predicted[m].cols() == 0) {
      throw DimensionError(fmt::format("sample {}: prediction has {} rows for {} generators", m,
                                       predicted[m].rows(), G));
    }
  }
  std::vector<SampleRepair> out(predicted.size());
  for (std::size_t m = 0; m < predicted.size(); ++m) {
    out[m].on = predicted[m];
    out[m].rows.resize(G);
  }
  parallel_for(options.execution, predicted.size() * G, [&](std::size_t k) {
    const std::size_t m = k / G;
    const int g = static_cast<int>(k % G);
    const auto row = predicted[m].row(g);
    Instance in;
    in.generator = g;
    in.min_up = system.generator(g).min_up;
    in.min_down = system.generator(g).min_down;
    in.initial_state = options.initial_state.empty() ? 0 : options.initial_state[g];
    in.row.assign(row.begin(), row.end());
    Result& r = out[m].rows[g];
    if (options.skip == SkipRule::kConstantRows && constant_row(row)) {
      r.on = in.row;
      r.startup = startups(r.on, in.initial_state);
      r.skipped = true;
      return;
    }
    r = repair_row(in, options.timing, options.solver);
    std::copy(r.on.begin(), r.on.end(), out[m].on.row(g).begin());
  });
  for (auto& s : out) {
    for (const auto& r : s.rows) s.solve_time += r.solve_time;
  }
  return out;
}

}  // namespace ucr::fl
