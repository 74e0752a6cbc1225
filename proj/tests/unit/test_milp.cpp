// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "support/milp_oracle.hpp"
#include "ucr/core/error.hpp"
#include "ucr/milp/branch_and_bound.hpp"
#include "ucr/milp/mps.hpp"
#include "ucr/milp/simplex.hpp"

using namespace ucr;
using namespace ucr::milp;

namespace {

SolveOptions exact() {
  SolveOptions o;
  o.mip_gap = 1e-12;
  return o;
}

void check_certificate(SimplexSolver& lp) {
  const auto d = lp.reduced_costs();
  const auto& state = lp.states();
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (lp.column_lower(static_cast<int>(j)) == lp.column_upper(static_cast<int>(j))) {
      continue;
    }
    switch (state[j]) {
      case SimplexSolver::VarState::kAtLower: CHECK(d[j] >= -1e-7); break;
      case SimplexSolver::VarState::kAtUpper: CHECK(d[j] <= 1e-7); break;
      case SimplexSolver::VarState::kFree: CHECK(std::abs(d[j]) <= 1e-7); break;
      default: break;
    }
  }
}

}  // namespace

TEST_CASE("lp: single upper bound") {
  MilpProblem p;
  p.add_variable("x", 0, kInfinity, VarType::kContinuous, -1);
  p.add_constraint("cap", {{0, 1}}, Relation::kLessEqual, 5);
  const auto sol = solve_lp(p);
  REQUIRE(sol.status == SolveStatus::kOptimal);
  CHECK(sol.objective == doctest::Approx(-5));
  CHECK(sol.values[0] == doctest::Approx(5));
}

TEST_CASE("lp: tight covering row") {
  MilpProblem p;
  p.add_variable("x", 0, kInfinity, VarType::kContinuous, 1);
  p.add_variable("y", 0, kInfinity, VarType::kContinuous, 1);
  p.add_constraint("cover", {{0, 1}, {1, 1}}, Relation::kGreaterEqual, 2);
  const auto sol = solve_lp(p);
  REQUIRE(sol.status == SolveStatus::kOptimal);
  CHECK(sol.objective == doctest::Approx(2));
}

TEST_CASE("lp: contradictory rows are infeasible") {
  MilpProblem p;
  p.add_variable("x", -kInfinity, kInfinity);
  p.add_constraint("lo", {{0, 1}}, Relation::kGreaterEqual, 3);
  p.add_constraint("hi", {{0, 1}}, Relation::kLessEqual, 1);
  CHECK(solve_lp(p).status == SolveStatus::kInfeasible);
}

TEST_CASE("lp: unbounded ray") {
  MilpProblem p;
  p.add_variable("x", 0, kInfinity, VarType::kContinuous, -1);
  p.add_variable("y", 0, kInfinity, VarType::kContinuous, 0);
  p.add_constraint("r", {{0, 1}, {1, -1}}, Relation::kLessEqual, 1);
  CHECK(solve_lp(p).status == SolveStatus::kUnbounded);
}

TEST_CASE("lp: empty row with violated rhs is infeasible") {
  MilpProblem p;
  p.add_variable("x", 0, 1);
  p.add_constraint("empty", {}, Relation::kGreaterEqual, 1);
  CHECK(solve_lp(p).status == SolveStatus::kInfeasible);
}

TEST_CASE("lp: equality system with free variables") {
  MilpProblem p;
  p.add_variable("a", -kInfinity, kInfinity, VarType::kContinuous, 1);
  p.add_variable("b", -kInfinity, kInfinity, VarType::kContinuous, 0);
  p.add_variable("c", 0, 10, VarType::kContinuous, 2);
  p.add_constraint("e1", {{0, 1}, {1, 1}}, Relation::kEqual, 4);
  p.add_constraint("e2", {{0, 1}, {1, -1}, {2, 1}}, Relation::kEqual, 1);
  p.add_constraint("g", {{0, 1}}, Relation::kGreaterEqual, 0.5);
  const auto sol = solve_lp(p);
  REQUIRE(sol.status == SolveStatus::kOptimal);
  CHECK(p.max_violation(sol.values) < 1e-9);
  // c = 5 - 2a, so the objective 10 - 3a is smallest at a = 2.5, c = 0.
  CHECK(sol.objective == doctest::Approx(2.5));
}

TEST_CASE("lp: reduced costs are sign-correct at termination") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto p = testing::random_milp(seed, 6, 8, 9).relaxed();
    SimplexSolver lp(p);
    REQUIRE(lp.solve() == SimplexSolver::Status::kOptimal);
    CHECK(p.max_violation(lp.primal_values()) < 1e-7);
    check_certificate(lp);
  }
}

TEST_CASE("lp: reoptimization after bound change matches a cold solve") {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    const auto p = testing::random_milp(seed, 5, 6, 8).relaxed();
    SimplexSolver warm(p);
    REQUIRE(warm.solve() == SimplexSolver::Status::kOptimal);
    warm.set_column_bounds(0, 1, 1);
    warm.set_column_bounds(3, 0, 0);
    auto fixed = fix_variables(p, {{0, 1.0}, {3, 0.0}});
    const auto cold = solve_lp(fixed);
    const auto status = warm.solve();
    if (cold.status == SolveStatus::kOptimal) {
      REQUIRE(status == SimplexSolver::Status::kOptimal);
      CHECK(warm.objective() == doctest::Approx(cold.objective).epsilon(1e-9));
      check_certificate(warm);
    } else {
      CHECK(status == SimplexSolver::Status::kInfeasible);
    }
  }
}

TEST_CASE("lp: checkpoint restore returns to the same optimum") {
  for (std::uint64_t seed = 200; seed < 220; ++seed) {
    const auto p = testing::random_milp(seed, 6, 6, 8).relaxed();
    SimplexSolver lp(p);
    REQUIRE(lp.solve() == SimplexSolver::Status::kOptimal);
    const double before = lp.objective();
    const auto point = lp.checkpoint();
    for (int j = 0; j < 6; ++j) {
      lp.set_column_bounds(j, 1, 1);
      lp.solve();
      lp.set_column_bounds(j, 0, 1);
      lp.restore(point);
      const long iters = lp.iterations();
      REQUIRE(lp.solve() == SimplexSolver::Status::kOptimal);
      CAPTURE(seed);
      CHECK(lp.iterations() - iters <= 1);  // one pricing pass, no pivots
      CHECK(lp.objective() == doctest::Approx(before).epsilon(1e-9));
    }
  }
}

TEST_CASE("milp: two binaries covering 1.5") {
  MilpProblem p;
  p.add_variable("x", 0, 1, VarType::kBinary, 1);
  p.add_variable("y", 0, 1, VarType::kBinary, 1);
  p.add_constraint("cover", {{0, 1}, {1, 1}}, Relation::kGreaterEqual, 1.5);
  const auto sol = solve_milp(p);
  REQUIRE(sol.status == SolveStatus::kOptimal);
  CHECK(sol.objective == doctest::Approx(2));
  CHECK(sol.values[0] == 1.0);
  CHECK(sol.values[1] == 1.0);
  CHECK(sol.objective == testing::enumerate_milp(p));
}

TEST_CASE("milp: random 10-binary instance matches enumeration") {
  const auto p = testing::random_milp(7, 10, 5, 8);
  const auto sol = solve_milp(p, exact());
  REQUIRE(sol.status == SolveStatus::kOptimal);
  CHECK(std::abs(sol.objective - testing::enumerate_milp(p)) <= 1e-6);
}

TEST_CASE("milp: oracle equivalence on random instances") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const int binaries = 1 + static_cast<int>(seed % 12);
    const int continuous = static_cast<int>(seed % 11);
    const auto p = testing::random_milp(1000 + seed, binaries, continuous,
                                        3 + static_cast<int>(seed % 7));
    const double oracle = testing::enumerate_milp(p);
    for (BranchRule rule : {BranchRule::kReliability, BranchRule::kMostFractional}) {
      auto options = exact();
      options.branching = rule;
      const auto sol = solve_milp(p, options);
      CAPTURE(seed);
      CAPTURE(static_cast<int>(rule));
      REQUIRE(sol.status == SolveStatus::kOptimal);
      CHECK(std::abs(sol.objective - oracle) <= 1e-6);
      CHECK(p.max_violation(sol.values) <= 1e-6);
      CHECK(sol.gap <= 1e-9);
    }
  }
}

TEST_CASE("milp: infeasible instance") {
  MilpProblem p;
  p.add_variable("x", 0, 1, VarType::kBinary);
  p.add_variable("y", 0, 1, VarType::kBinary);
  p.add_constraint("odd", {{0, 2}, {1, 2}}, Relation::kEqual, 1);
  CHECK(solve_milp(p).status == SolveStatus::kInfeasible);
}

TEST_CASE("milp: incumbents never get worse") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto p = testing::random_milp(5000 + seed, 12, 6, 10);
    const auto sol = solve_milp(p, exact());
    for (std::size_t k = 1; k < sol.incumbent_history.size(); ++k) {
      CHECK(sol.incumbent_history[k] <= sol.incumbent_history[k - 1]);
    }
    if (sol.has_solution()) CHECK(sol.incumbent_history.back() == sol.objective);
  }
}

TEST_CASE("milp: warm start is sound") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto p = testing::random_milp(7000 + seed, 10, 5, 8);
    const auto cold = solve_milp(p, exact());
    REQUIRE(cold.has_solution());
    // Any feasible assignment: take the optimum with one binary flipped if
    // that stays feasible, else the optimum itself.
    auto warm_values = cold.values;
    warm_values[seed % 10] = 1.0 - warm_values[seed % 10];
    std::vector<std::pair<int, double>> fix;
    for (int j : p.binary_indices()) fix.emplace_back(j, warm_values[j]);
    const auto warm_lp = solve_lp(fix_variables(p, fix));
    if (warm_lp.status != SolveStatus::kOptimal) warm_values = cold.values;
    auto opts = exact();
    opts.warm_start = warm_values;
    const auto warm = solve_milp(p, opts);
    REQUIRE(warm.has_solution());
    CHECK(std::abs(warm.objective - cold.objective) <= 1e-9 * std::max(1.0, std::abs(cold.objective)));
    REQUIRE(!warm.incumbent_history.empty());
    const double first = warm.incumbent_history.front();
    if (warm_lp.status == SolveStatus::kOptimal) {
      CHECK(first == doctest::Approx(warm_lp.objective));
    }
    CHECK(warm.objective <= first + 1e-9);
  }
}

TEST_CASE("milp: deterministic repeated solves") {
  const auto p = testing::random_milp(99, 12, 8, 10);
  const auto a = solve_milp(p, exact());
  const auto b = solve_milp(p, exact());
  CHECK(a.values == b.values);
  CHECK(a.nodes_explored == b.nodes_explored);
  CHECK(a.lp_iterations == b.lp_iterations);
}

TEST_CASE("milp: fully fixed problem equals LP on the fixing") {
  const auto p = testing::random_milp(31, 8, 6, 7);
  const auto opt = solve_milp(p, exact());
  REQUIRE(opt.has_solution());
  std::vector<std::pair<int, double>> fix;
  for (int j : p.binary_indices()) fix.emplace_back(j, opt.values[j]);
  const auto fixed = fix_variables(p, fix);
  CHECK(fixed.free_binary_count() == 0);
  const auto milp = solve_milp(fixed, exact());
  const auto lp = solve_lp(fixed);
  CHECK(milp.objective == doctest::Approx(lp.objective).epsilon(1e-12));
  CHECK(milp.objective == doctest::Approx(opt.objective).epsilon(1e-9));
  CHECK(milp.nodes_explored == 1);
}

TEST_CASE("fix_variables: bounds and errors") {
  MilpProblem p;
  p.add_variable("u", 0, 1, VarType::kBinary);
  p.add_variable("x", 0, 3);
  const auto fixed = fix_variables(p, {{0, 1.0}});
  CHECK(fixed.variables[0].lower == 1.0);
  CHECK(fixed.variables[0].upper == 1.0);
  CHECK(fixed.variables[1].upper == 3.0);
  CHECK_THROWS_AS(fix_variables(p, {{0, 2.0}}), ValidationError);
  CHECK_THROWS_AS(fix_variables(p, {{0, 0.5}}), ValidationError);
  CHECK_THROWS_AS(fix_variables(p, {{5, 1.0}}), ValidationError);
}

TEST_CASE("problem validation rejects malformed input") {
  MilpProblem p;
  p.add_variable("u", 0, 2, VarType::kBinary);
  CHECK_THROWS_AS(p.validate(), ValidationError);
  MilpProblem q;
  q.add_variable("x", 0, 1);
  q.add_constraint("bad", {{3, 1.0}}, Relation::kLessEqual, 1);
  CHECK_THROWS_AS(q.validate(), ValidationError);
  SolveOptions o;
  o.feasibility_tolerance = 0;
  CHECK_THROWS_AS(o.validate(), ValidationError);
  SolveOptions r;
  r.strong_candidates = -1;
  CHECK_THROWS_AS(r.validate(), ValidationError);
}

TEST_CASE("mps: sections and binary markers") {
  MilpProblem p;
  p.add_variable("x", 0, 4, VarType::kContinuous, 1.5);
  p.add_variable("y", 0, 1, VarType::kBinary, -2);
  p.add_constraint("row", {{0, 1}, {1, 3}}, Relation::kLessEqual, 5);
  std::ostringstream out;
  write_mps(p, out);
  const std::string text = out.str();
  for (const char* section : {"ROWS", "COLUMNS", "RHS", "BOUNDS", "ENDATA"}) {
    CHECK(text.find(std::string("\n") + section + "\n") != std::string::npos);
  }
  CHECK(text.find("'INTORG'") != std::string::npos);
  CHECK(text.find(" BV BND       C0000002") != std::string::npos);
}

TEST_CASE("mps: round trip through the reader preserves the problem") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto p = testing::random_milp(seed, 4, 5, 6);
    p.variables[5].lower = -kInfinity;
    p.variables[6].lower = -2.5;
    p.variables[7].lower = -kInfinity;
    p.variables[7].upper = kInfinity;
    p.variables[1].lower = p.variables[1].upper = 1;
    p.objective_constant = 12.25;
    p.add_constraint("eq", {{4, 1.0}, {5, -1.0}}, Relation::kEqual, 0.75);
    std::ostringstream out;
    write_mps(p, out);
    std::istringstream in(out.str());
    const auto q = testing::read_mps(in);
    REQUIRE(q.variable_count() == p.variable_count());
    REQUIRE(q.constraint_count() == p.constraint_count());
    CHECK(q.binary_count() == p.binary_count());
    CHECK(q.objective_constant == p.objective_constant);
    for (int j = 0; j < p.variable_count(); ++j) {
      CHECK(q.variables[j].lower == p.variables[j].lower);
      CHECK(q.variables[j].upper == p.variables[j].upper);
      CHECK(q.variables[j].cost == p.variables[j].cost);
    }
    const auto a = solve_milp(p, exact());
    const auto b = solve_milp(q, exact());
    CHECK(a.status == b.status);
    if (a.has_solution()) {
      CHECK(a.objective == doctest::Approx(b.objective).epsilon(1e-12));
    }
  }
}
