// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include "ucr/scuc/builder.hpp"

#include <cmath>

#include <fmt/format.h>

#include "ucr/core/error.hpp"

namespace ucr::scuc {

using milp::kInfinity;
using milp::Relation;
using milp::Term;
using milp::VarType;

VariableIndex::VariableIndex(int generators, int lines, int buses, int periods,
                             int scenarios)
    : generators_(generators),
      lines_(lines),
      buses_(buses),
      periods_(periods),
      scenarios_(scenarios),
      u_(generators * periods, -1),
      v_(generators * periods, -1),
      p_(generators * periods * scenarios, -1),
      r_(generators * periods * scenarios, -1),
      f_(lines * periods * scenarios, -1),
      theta_(buses * periods * scenarios, -1) {}

int VariableIndex::size() const {
  return static_cast<int>(u_.size() + v_.size() + p_.size() + r_.size() + f_.size() +
                          theta_.size());
}

ScucModel build_scuc(const grid::PowerSystem& system, const grid::LoadProfile& profile,
                     const ScucOptions& options) {
  grid::validate_profile(system, profile);
  options.initial.validate(system);

  const int G = system.generator_count();
  const int K = system.line_count();
  const int N = system.bus_count();
  const int T = system.horizon();
  const int S = options.stochastic ? system.scenario_count() : 1;

  ScucModel model;
  model.options = options;
  model.scenario_weights =
      options.stochastic ? system.scenario_probabilities() : std::vector<double>{1.0};
  model.index = VariableIndex(G, K, N, T, S);
  auto& idx = model.index;
  auto& p = model.problem;
  p.name = system.name().empty() ? "scuc" : system.name();

  std::vector<Matrix> load;
  for (int s = 0; s < S; ++s) {
    load.push_back(options.stochastic ? grid::net_load(system, profile, s)
                                      : profile.demand);
  }

  const auto& init = options.initial;
  for (int g = 0; g < G; ++g) {
    const auto& gen = system.generator(g);
    const int carry = carry_over_periods(gen.min_up, gen.min_down, init.state_of(g),
                                         init.duration_of(g), T);
    for (int t = 0; t < T; ++t) {
      double lo = 0.0;
      double up = 1.0;
      if (t < carry) lo = up = init.state_of(g);
      idx.on(g, t) = p.add_variable(fmt::format("u/g{}/t{}", gen.id, t + 1), lo, up,
                                    VarType::kBinary, gen.cost_no_load);
    }
  }
  for (int g = 0; g < G; ++g) {
    const auto& gen = system.generator(g);
    for (int t = 0; t < T; ++t) {
      idx.startup(g, t) = p.add_variable(fmt::format("v/g{}/t{}", gen.id, t + 1), 0, 1,
                                         VarType::kBinary, gen.cost_startup);
    }
  }
  for (int g = 0; g < G; ++g) {
    const auto& gen = system.generator(g);
    for (int t = 0; t < T; ++t) {
      for (int s = 0; s < S; ++s) {
        idx.output(g, t, s) =
            p.add_variable(fmt::format("p/g{}/t{}/s{}", gen.id, t + 1, s + 1), 0,
                           gen.p_max, VarType::kContinuous,
                           model.scenario_weights[s] * gen.cost_linear);
      }
    }
  }
  for (int g = 0; g < G; ++g) {
    const auto& gen = system.generator(g);
    for (int t = 0; t < T; ++t) {
      for (int s = 0; s < S; ++s) {
        idx.reserve(g, t, s) = p.add_variable(
            fmt::format("r/g{}/t{}/s{}", gen.id, t + 1, s + 1), 0, gen.ramp_10min);
      }
    }
  }
  for (int k = 0; k < K; ++k) {
    const auto& line = system.line(k);
    for (int t = 0; t < T; ++t) {
      for (int s = 0; s < S; ++s) {
        idx.flow(k, t, s) =
            p.add_variable(fmt::format("f/k{}/t{}/s{}", line.id, t + 1, s + 1),
                           -line.flow_limit, line.flow_limit);
      }
    }
  }
  const int ref = system.reference_bus_index();
  for (int n = 0; n < N; ++n) {
    const double bound = n == ref ? 0.0 : kInfinity;
    for (int t = 0; t < T; ++t) {
      for (int s = 0; s < S; ++s) {
        idx.angle(n, t, s) = p.add_variable(
            fmt::format("theta/n{}/t{}/s{}", system.bus(n).id, t + 1, s + 1), -bound,
            bound);
      }
    }
  }

  auto tag = [](const char* fam, int id, int t, int s) {
    return fmt::format("{}/{}/t{}/s{}", fam, id, t + 1, s + 1);
  };

  // Per-unit capacity, reserve and ramping rows.
  for (int g = 0; g < G; ++g) {
    const auto& gen = system.generator(g);
    const double p0 = init.dispatch_of(g);
    const double u0 = init.state_of(g);
    for (int t = 0; t < T; ++t) {
      const int u = idx.on(g, t);
      const int v = idx.startup(g, t);
      for (int s = 0; s < S; ++s) {
        const int P = idx.output(g, t, s);
        const int r = idx.reserve(g, t, s);
        p.add_constraint(tag(family::kMinOutput, gen.id, t, s), {{P, 1.0}, {u, -gen.p_min}},
                         Relation::kGreaterEqual, 0.0);
        p.add_constraint(tag(family::kMaxOutput, gen.id, t, s),
                         {{P, 1.0}, {r, 1.0}, {u, -gen.p_max}}, Relation::kLessEqual, 0.0);
        p.add_constraint(tag(family::kReserveRamp, gen.id, t, s),
                         {{r, 1.0}, {u, -gen.ramp_10min}}, Relation::kLessEqual, 0.0);

        std::vector<Term> up{{P, 1.0}, {v, -gen.ramp_startup}};
        std::vector<Term> down{{P, -1.0},
                               {u, gen.ramp_shutdown - gen.ramp_hourly},
                               {v, -gen.ramp_shutdown}};
        double up_rhs = 0.0;
        double down_rhs = 0.0;
        if (t == 0) {
          up_rhs = p0 + gen.ramp_hourly * u0;
          down_rhs = -p0 + gen.ramp_shutdown * u0;
        } else {
          const int prev_p = idx.output(g, t - 1, s);
          const int prev_u = idx.on(g, t - 1);
          up.push_back({prev_p, -1.0});
          up.push_back({prev_u, -gen.ramp_hourly});
          down.push_back({prev_p, 1.0});
          down.push_back({prev_u, -gen.ramp_shutdown});
        }
        p.add_constraint(tag(family::kRampUp, gen.id, t, s), std::move(up),
                         Relation::kLessEqual, up_rhs);
        p.add_constraint(tag(family::kRampDown, gen.id, t, s), std::move(down),
                         Relation::kLessEqual, down_rhs);
      }
    }
  }

  // Reserve must cover the output plus reserve of any single unit. The r_g
  // term appears on both sides and cancels.
  for (int g = 0; g < G; ++g) {
    for (int t = 0; t < T; ++t) {
      for (int s = 0; s < S; ++s) {
        std::vector<Term> terms;
        for (int q = 0; q < G; ++q) {
          if (q != g) terms.push_back({idx.reserve(q, t, s), 1.0});
        }
        terms.push_back({idx.output(g, t, s), -1.0});
        p.add_constraint(tag(family::kReserveCover, system.generator(g).id, t, s),
                         std::move(terms), Relation::kGreaterEqual, 0.0);
      }
    }
  }

  // Commitment logic, shared by all scenarios.
  for (int g = 0; g < G; ++g) {
    const auto& gen = system.generator(g);
    for (int t = 1; t <= T; ++t) {
      if (t >= gen.min_up) {
        std::vector<Term> terms;
        for (int q = t - gen.min_up + 1; q <= t; ++q) {
          terms.push_back({idx.startup(g, q - 1), 1.0});
        }
        terms.push_back({idx.on(g, t - 1), -1.0});
        p.add_constraint(fmt::format("{}/{}/t{}", family::kMinUp, gen.id, t),
                         std::move(terms), Relation::kLessEqual, 0.0);
      }
      if (t <= T - gen.min_down) {
        std::vector<Term> terms;
        for (int q = t + 1; q <= t + gen.min_down; ++q) {
          terms.push_back({idx.startup(g, q - 1), 1.0});
        }
        terms.push_back({idx.on(g, t - 1), 1.0});
        p.add_constraint(fmt::format("{}/{}/t{}", family::kMinDown, gen.id, t),
                         std::move(terms), Relation::kLessEqual, 1.0);
      }
      std::vector<Term> terms{{idx.startup(g, t - 1), 1.0}, {idx.on(g, t - 1), -1.0}};
      double rhs = -init.state_of(g);
      if (t > 1) {
        terms.push_back({idx.on(g, t - 2), 1.0});
        rhs = 0.0;
      }
      p.add_constraint(fmt::format("{}/{}/t{}", family::kStartup, gen.id, t),
                       std::move(terms), Relation::kGreaterEqual, rhs);
    }
  }

  // DC network.
  const double base = system.base_mva();
  for (int k = 0; k < K; ++k) {
    const auto& line = system.line(k);
    const double b = base * line.susceptance;
    for (int t = 0; t < T; ++t) {
      for (int s = 0; s < S; ++s) {
        p.add_constraint(tag(family::kFlow, line.id, t, s),
                         {{idx.flow(k, t, s), 1.0},
                          {idx.angle(system.line_from(k), t, s), -b},
                          {idx.angle(system.line_to(k), t, s), b}},
                         Relation::kEqual, 0.0);
      }
    }
  }
  for (int n = 0; n < N; ++n) {
    for (int t = 0; t < T; ++t) {
      for (int s = 0; s < S; ++s) {
        std::vector<Term> terms;
        for (int g : system.generators_at(n)) terms.push_back({idx.output(g, t, s), 1.0});
        for (int k : system.lines_into(n)) terms.push_back({idx.flow(k, t, s), 1.0});
        for (int k : system.lines_out_of(n)) terms.push_back({idx.flow(k, t, s), -1.0});
        p.add_constraint(tag(family::kBalance, system.bus(n).id, t, s), std::move(terms),
                         Relation::kEqual, load[s](n, t));
      }
    }
  }
  return model;
}

std::map<std::string, int> family_counts(const milp::MilpProblem& problem) {
  std::map<std::string, int> counts;
  for (const auto& c : problem.constraints) {
    counts[c.name.substr(0, c.name.find('/'))] += 1;
  }
  return counts;
}

ScucSolution extract_schedule(const milp::MilpSolution& solution, const ScucModel& model,
                              double integrality_tolerance) {
  if (!solution.has_solution()) {
    throw ValidationError(fmt::format("cannot extract a schedule from a solution with status {}",
                                      milp::to_string(solution.status)));
  }
  const auto& idx = model.index;
  const auto& x = solution.values;
  const int G = idx.generators();
  const int T = idx.periods();
  const int S = idx.scenarios();
  auto binary = [&](int var) -> std::uint8_t {
    const double value = x[var];
    if (std::abs(value - std::round(value)) > integrality_tolerance) {
      throw ValidationError(fmt::format("variable {} = {} is not integral", var, value));
    }
    return value > 0.5 ? 1 : 0;
  };
  ScucSolution out;
  out.schedule.on = BinaryMatrix(G, T);
  out.schedule.startup = BinaryMatrix(G, T);
  for (int g = 0; g < G; ++g) {
    for (int t = 0; t < T; ++t) {
      out.schedule.on(g, t) = binary(idx.on(g, t));
      out.schedule.startup(g, t) = binary(idx.startup(g, t));
    }
  }
  for (int s = 0; s < S; ++s) {
    Matrix output(G, T), reserve(G, T), flow(idx.lines(), T), angle(idx.buses(), T);
    for (int t = 0; t < T; ++t) {
      for (int g = 0; g < G; ++g) {
        output(g, t) = x[idx.output(g, t, s)];
        reserve(g, t) = x[idx.reserve(g, t, s)];
      }
      for (int k = 0; k < idx.lines(); ++k) flow(k, t) = x[idx.flow(k, t, s)];
      for (int n = 0; n < idx.buses(); ++n) angle(n, t) = x[idx.angle(n, t, s)];
    }
    out.output.push_back(std::move(output));
    out.reserve.push_back(std::move(reserve));
    out.flow.push_back(std::move(flow));
    out.angle.push_back(std::move(angle));
  }
  out.objective = solution.objective;
  return out;
}

}  // namespace ucr::scuc
