// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "support/scuc_oracle.hpp"
#include "ucr/core/error.hpp"
#include "ucr/milp/branch_and_bound.hpp"
#include "ucr/scuc/builder.hpp"
#include "ucr/scuc/reduction.hpp"

using namespace ucr;
using namespace ucr::scuc;

namespace {

grid::Generator unit(int id, int bus, double p_min, double p_max, double cost) {
  grid::Generator g;
  g.id = id;
  g.bus = bus;
  g.p_min = p_min;
  g.p_max = p_max;
  g.cost_linear = cost;
  g.ramp_hourly = g.ramp_startup = g.ramp_shutdown = p_max;
  g.ramp_10min = p_max;
  return g;
}

grid::PowerSystem single_bus(std::vector<grid::Generator> gens, int horizon) {
  grid::SystemData d;
  d.name = "single";
  d.buses = {{1, "b"}};
  d.generators = std::move(gens);
  d.horizon = horizon;
  return grid::PowerSystem(d);
}

grid::LoadProfile flat(const grid::PowerSystem& sys, std::vector<double> per_period) {
  grid::LoadProfile p;
  p.demand = Matrix(sys.bus_count(), sys.horizon());
  for (int t = 0; t < sys.horizon(); ++t) p.demand(0, t) = per_period[t];
  return p;
}

milp::SolveOptions exact() {
  milp::SolveOptions o;
  o.mip_gap = 1e-12;
  return o;
}

// Row count per family implied by the formulation's index ranges.
std::map<std::string, int> expected_counts(const grid::PowerSystem& sys, int S) {
  const int G = sys.generator_count(), T = sys.horizon();
  std::map<std::string, int> c;
  for (const char* f : {family::kMinOutput, family::kMaxOutput, family::kReserveRamp,
                        family::kRampUp, family::kRampDown, family::kReserveCover}) {
    c[f] = G * T * S;
  }
  c[family::kStartup] = G * T;
  for (int g = 0; g < G; ++g) {
    c[family::kMinUp] += std::max(0, T - sys.generator(g).min_up + 1);
    c[family::kMinDown] += std::max(0, T - sys.generator(g).min_down);
  }
  c[family::kFlow] = sys.line_count() * T * S;
  c[family::kBalance] = sys.bus_count() * T * S;
  std::erase_if(c, [](const auto& kv) { return kv.second == 0; });
  return c;
}

double max_balance_residual(const ScucModel& model, const grid::PowerSystem& sys,
                            const ScucSolution& sol, const grid::LoadProfile& profile) {
  double worst = 0.0;
  for (int s = 0; s < model.index.scenarios(); ++s) {
    const Matrix load = model.options.stochastic ? grid::net_load(sys, profile, s)
                                                 : profile.demand;
    for (int n = 0; n < sys.bus_count(); ++n) {
      for (int t = 0; t < sys.horizon(); ++t) {
        double inject = 0.0;
        for (int g : sys.generators_at(n)) inject += sol.output[s](g, t);
        for (int k : sys.lines_into(n)) inject += sol.flow[s](k, t);
        for (int k : sys.lines_out_of(n)) inject -= sol.flow[s](k, t);
        worst = std::max(worst, std::abs(inject - load(n, t)));
      }
    }
    for (int k = 0; k < sys.line_count(); ++k) {
      const double b = sys.base_mva() * sys.line(k).susceptance;
      for (int t = 0; t < sys.horizon(); ++t) {
        const double f = b * (sol.angle[s](sys.line_from(k), t) -
                              sol.angle[s](sys.line_to(k), t));
        worst = std::max(worst, std::abs(f - sol.flow[s](k, t)));
      }
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("build: two units, one bus, one period") {
  const auto sys = single_bus({unit(1, 1, 0, 100, 1), unit(2, 1, 0, 100, 1)}, 1);
  const auto model = build_scuc(sys, flat(sys, {100}));
  const auto& p = model.problem;
  CHECK(p.binary_count() == 4);
  CHECK(p.variable_count() == 4 + 2 + 2 + 1);
  CHECK(model.index.size() == p.variable_count());
  CHECK(family_counts(p) == expected_counts(sys, 1));
  CHECK(p.variables[model.index.angle(0, 0, 0)].lower == 0.0);
  CHECK(p.variables[model.index.angle(0, 0, 0)].upper == 0.0);
}

TEST_CASE("build: variable ids are a bijection") {
  const auto sys = testing::data_system("desk3");
  const auto model = build_scuc(sys, testing::data_profile("desk3", sys));
  const auto& idx = model.index;
  std::vector<int> seen(model.problem.variable_count(), 0);
  for (int t = 0; t < idx.periods(); ++t) {
    for (int g = 0; g < idx.generators(); ++g) {
      ++seen[idx.on(g, t)];
      ++seen[idx.startup(g, t)];
      ++seen[idx.output(g, t, 0)];
      ++seen[idx.reserve(g, t, 0)];
    }
    for (int k = 0; k < idx.lines(); ++k) ++seen[idx.flow(k, t, 0)];
    for (int n = 0; n < idx.buses(); ++n) ++seen[idx.angle(n, t, 0)];
  }
  for (int c : seen) CHECK(c == 1);
  CHECK(family_counts(model.problem) == expected_counts(sys, 1));
}

TEST_CASE("build: two identical units serving 100 MW cost 100") {
  const auto sys = single_bus({unit(1, 1, 0, 100, 1), unit(2, 1, 0, 100, 1)}, 1);
  const auto model = build_scuc(sys, flat(sys, {100}));
  const auto sol = milp::solve_milp(model.problem, exact());
  REQUIRE(sol.status == milp::SolveStatus::kOptimal);
  CHECK(sol.objective == doctest::Approx(100));
  CHECK(testing::brute_force_scuc(model) == doctest::Approx(100));
}

TEST_CASE("build: a single unit cannot cover its own outage") {
  const auto sys = single_bus({unit(1, 1, 0, 100, 1)}, 1);
  const auto model = build_scuc(sys, flat(sys, {10}));
  CHECK(milp::solve_milp(model.problem).status == milp::SolveStatus::kInfeasible);
}

TEST_CASE("build: stochastic mode shares commitment and multiplies dispatch") {
  const auto sys = testing::data_system("desk4_renewable");
  const auto profile = testing::data_profile("desk4_renewable", sys);
  const auto det = build_scuc(sys, profile);
  ScucOptions opts;
  opts.stochastic = true;
  const auto sto = build_scuc(sys, profile, opts);
  CHECK(sto.index.scenarios() == 3);
  CHECK(sto.problem.binary_count() == det.problem.binary_count());
  const int G = sys.generator_count(), T = sys.horizon();
  const int K = sys.line_count(), N = sys.bus_count();
  CHECK(det.problem.variable_count() == 2 * G * T + 2 * G * T + K * T + N * T);
  CHECK(sto.problem.variable_count() == 2 * G * T + 3 * (2 * G * T + K * T + N * T));
  CHECK(family_counts(sto.problem) == expected_counts(sys, 3));
}

TEST_CASE("solve: desk3 matches brute force and satisfies network rows") {
  const auto sys = testing::data_system("desk3");
  const auto profile = testing::data_profile("desk3", sys);
  const auto model = build_scuc(sys, profile);
  const auto sol = milp::solve_milp(model.problem, exact());
  REQUIRE(sol.status == milp::SolveStatus::kOptimal);
  CHECK(std::abs(sol.objective - testing::brute_force_scuc(model)) <= 1e-6);
  const auto extracted = extract_schedule(sol, model);
  CHECK(max_balance_residual(model, sys, extracted, profile) <= 1e-5);
  CHECK(check_min_updown(extracted.schedule, sys).empty());
  for (int t = 0; t < sys.horizon(); ++t) {
    double total = 0.0;
    for (int g = 0; g < sys.generator_count(); ++g) total += extracted.reserve[0](g, t);
    for (int g = 0; g < sys.generator_count(); ++g) {
      CHECK(total + 1e-6 >= 2 * extracted.reserve[0](g, t) + extracted.output[0](g, t) -
                                extracted.reserve[0](g, t));
    }
    for (int g = 0; g < sys.generator_count(); ++g) {
      const int prev = t == 0 ? 0 : extracted.schedule.on(g, t - 1);
      CHECK(extracted.schedule.startup(g, t) >= extracted.schedule.on(g, t) - prev);
    }
  }
}

TEST_CASE("solve: binding ramps, redundant start-up indicators enumerated") {
  // Tight hourly ramps make an extra start-up indicator worth buying, so the
  // oracle must enumerate those too.
  auto a = unit(1, 1, 10, 100, 5);
  a.ramp_hourly = 20;
  a.ramp_startup = 60;
  a.ramp_shutdown = 60;
  a.cost_startup = 15;
  a.ramp_10min = 60;
  auto b = unit(2, 1, 0, 80, 30);
  b.ramp_10min = 80;
  b.cost_no_load = 10;
  auto sys = single_bus({a, b}, 3);
  const auto model = build_scuc(sys, flat(sys, {40, 75, 50}));
  const auto sol = milp::solve_milp(model.problem, exact());
  REQUIRE(sol.status == milp::SolveStatus::kOptimal);
  CHECK(std::abs(sol.objective - testing::brute_force_scuc(model, true)) <= 1e-6);
  CHECK(testing::brute_force_scuc(model, true) <= testing::brute_force_scuc(model) + 1e-9);
}

TEST_CASE("initial conditions: carry-over fixes early periods") {
  auto g1 = unit(1, 1, 10, 100, 5);
  g1.min_up = 3;
  auto g2 = unit(2, 1, 0, 100, 6);
  auto sys = single_bus({g1, g2}, 4);
  ScucOptions opts;
  opts.initial.state = {1, 0};
  opts.initial.duration = {1, -1};
  opts.initial.dispatch = {50, 0};
  const auto model = build_scuc(sys, flat(sys, {30, 30, 30, 30}), opts);
  CHECK(model.problem.variables[model.index.on(0, 0)].lower == 1.0);
  CHECK(model.problem.variables[model.index.on(0, 1)].lower == 1.0);
  CHECK(model.problem.variables[model.index.on(0, 2)].lower == 0.0);
  opts.initial.dispatch = {0, 10};
  CHECK_THROWS_AS(build_scuc(sys, flat(sys, {30, 30, 30, 30}), opts), ValidationError);
  opts.initial.state = {1};
  CHECK_THROWS_AS(build_scuc(sys, flat(sys, {30, 30, 30, 30}), opts), DimensionError);
}

TEST_CASE("check_min_updown") {
  const std::vector<std::uint8_t> row{0, 1, 0, 0, 0, 0};
  const auto v = check_row(row, 3, 1);
  REQUIRE(v.size() == 2);
  CHECK(v[0].period == 2);
  CHECK(v[1].period == 3);
  CHECK(v[0].rule == UpDownRule::kMinUp);

  const auto sys = testing::data_system("desk4");
  CommitmentSchedule off =
      CommitmentSchedule::from_states(BinaryMatrix(sys.generator_count(), sys.horizon()));
  CHECK(check_min_updown(off, sys).empty());
  CHECK_THROWS_AS(check_min_updown(CommitmentSchedule::from_states(BinaryMatrix(2, 2)), sys),
                  DimensionError);

  // Minimum down time: OFF for one period then back ON.
  const std::vector<std::uint8_t> dip{1, 0, 1, 1};
  const auto d = check_row(dip, 1, 2);
  REQUIRE(d.size() == 1);
  CHECK(d[0].rule == UpDownRule::kMinDown);
  CHECK(d[0].period == 0);
  // Carry-over: ON for one period with UT = 3 must stay ON through t = 2.
  const std::vector<std::uint8_t> early_off{1, 0, 0, 0};
  const auto c = check_row(early_off, 3, 1, 1, 1);
  REQUIRE(!c.empty());
  CHECK(c[0].rule == UpDownRule::kCarryOver);
}

TEST_CASE("extract_schedule rounds within tolerance and rejects missing points") {
  const auto sys = single_bus({unit(1, 1, 0, 100, 1), unit(2, 1, 0, 100, 1)}, 1);
  const auto model = build_scuc(sys, flat(sys, {100}));
  auto sol = milp::solve_milp(model.problem, exact());
  sol.values[model.index.on(0, 0)] = 0.9999999;
  const auto ex = extract_schedule(sol, model);
  CHECK(ex.schedule.on(0, 0) == 1);
  CHECK(ex.schedule.on(1, 0) == 1);
  milp::MilpSolution none;
  CHECK_THROWS_AS(extract_schedule(none, model), ValidationError);
}

TEST_CASE("apply_reduction") {
  const auto sys = testing::data_system("desk3");
  const auto model = build_scuc(sys, testing::data_profile("desk3", sys));
  const auto full = milp::solve_milp(model.problem, exact());
  REQUIRE(full.has_solution());
  const auto best = extract_schedule(full, model).schedule;

  SUBCASE("empty plan leaves the problem unchanged") {
    const auto reduced = apply_reduction(model, ReductionPlan::none(3, 4));
    CHECK(reduced.problem.variables.size() == model.problem.variables.size());
    for (int j = 0; j < model.problem.variable_count(); ++j) {
      CHECK(reduced.problem.variables[j].lower == model.problem.variables[j].lower);
      CHECK(reduced.problem.variables[j].upper == model.problem.variables[j].upper);
    }
    CHECK(!reduced.warm_start);
  }
  SUBCASE("fixing the optimum keeps the objective") {
    const auto reduced = apply_reduction(model, fix_all(best.on));
    CHECK(reduced.problem.free_binary_count() == model.problem.free_binary_count() / 2);
    const auto sol = milp::solve_milp(reduced.problem, exact());
    CHECK(sol.objective == doctest::Approx(full.objective).epsilon(1e-9));
    const auto dispatch = dispatch_schedule(model, best.on);
    REQUIRE(dispatch);
    CHECK(dispatch->objective == doctest::Approx(full.objective).epsilon(1e-9));
  }
  SUBCASE("flexible entries become a warm start") {
    auto plan = fix_all(best.on);
    plan.fixed(0, 1) = 0;
    const auto reduced = apply_reduction(model, plan);
    REQUIRE(reduced.warm_start);
    CHECK((*reduced.warm_start)[model.index.on(0, 1)] == best.on(0, 1));
    auto opts = exact();
    opts.warm_start = reduced.warm_start;
    const auto sol = milp::solve_milp(reduced.problem, opts);
    CHECK(sol.objective == doctest::Approx(full.objective).epsilon(1e-9));
  }
  SUBCASE("plan shape is checked") {
    CHECK_THROWS_AS(apply_reduction(model, ReductionPlan::none(2, 4)), DimensionError);
  }
}

TEST_CASE("identical scenarios reproduce the deterministic model") {
  auto data = testing::data_system("desk4_renewable").data();
  for (auto& w : data.renewables) {
    for (std::size_t t = 0; t < w.output.rows(); ++t) {
      for (std::size_t s = 1; s < w.output.cols(); ++s) w.output(t, s) = w.output(t, 0);
    }
  }
  const grid::PowerSystem sys(data);
  const auto profile = testing::data_profile("desk4_renewable", sys);
  ScucOptions opts;
  opts.stochastic = true;
  const auto sto = build_scuc(sys, profile, opts);
  grid::LoadProfile net;
  net.demand = grid::net_load(sys, profile, 0);
  const auto det = build_scuc(sys, net);
  const auto a = milp::solve_milp(sto.problem, exact());
  const auto b = milp::solve_milp(det.problem, exact());
  REQUIRE(a.status == milp::SolveStatus::kOptimal);
  REQUIRE(b.status == milp::SolveStatus::kOptimal);
  CHECK(std::abs(a.objective - b.objective) <= 1e-6);
  const auto ex = extract_schedule(a, sto);
  CHECK(max_balance_residual(sto, sys, ex, profile) <= 1e-5);
}
