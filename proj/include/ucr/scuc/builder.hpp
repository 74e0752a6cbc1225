// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <vector>

#include "ucr/grid/power_system.hpp"
#include "ucr/milp/problem.hpp"
#include "ucr/scuc/schedule.hpp"

namespace ucr::scuc {

struct ScucOptions {
  InitialConditions initial;
  /// Stochastic mode uses every renewable scenario of the system weighted by
  /// its probability; deterministic mode uses one scenario with renewables
  /// at zero output.
  bool stochastic = false;
};

/// Variable ids of the SCUC model. Commitment variables are indexed by
/// (g, t); dispatch-side variables by (element, t, s).
class VariableIndex {
 public:
  VariableIndex() = default;
  VariableIndex(int generators, int lines, int buses, int periods, int scenarios);

  int generators() const { return generators_; }
  int lines() const { return lines_; }
  int buses() const { return buses_; }
  int periods() const { return periods_; }
  int scenarios() const { return scenarios_; }

  int on(int g, int t) const { return u_[g * periods_ + t]; }
  int startup(int g, int t) const { return v_[g * periods_ + t]; }
  int output(int g, int t, int s) const { return p_[slot(g, t, s)]; }
  int reserve(int g, int t, int s) const { return r_[slot(g, t, s)]; }
  int flow(int k, int t, int s) const { return f_[slot(k, t, s)]; }
  int angle(int n, int t, int s) const { return theta_[slot(n, t, s)]; }

  int& on(int g, int t) { return u_[g * periods_ + t]; }
  int& startup(int g, int t) { return v_[g * periods_ + t]; }
  int& output(int g, int t, int s) { return p_[slot(g, t, s)]; }
  int& reserve(int g, int t, int s) { return r_[slot(g, t, s)]; }
  int& flow(int k, int t, int s) { return f_[slot(k, t, s)]; }
  int& angle(int n, int t, int s) { return theta_[slot(n, t, s)]; }

  /// Total number of ids held; equals the model's variable count.
  int size() const;

 private:
  int slot(int e, int t, int s) const { return (e * periods_ + t) * scenarios_ + s; }

  int generators_ = 0;
  int lines_ = 0;
  int buses_ = 0;
  int periods_ = 0;
  int scenarios_ = 0;
  std::vector<int> u_, v_, p_, r_, f_, theta_;
};

struct ScucModel {
  milp::MilpProblem problem;
  VariableIndex index;
  std::vector<double> scenario_weights;
  ScucOptions options;
};

/// Row family names used as constraint-name prefixes.
namespace family {
inline constexpr const char* kMinOutput = "min_output";
inline constexpr const char* kMaxOutput = "max_output";
inline constexpr const char* kReserveRamp = "reserve_ramp";
inline constexpr const char* kReserveCover = "reserve_cover";
inline constexpr const char* kRampUp = "ramp_up";
inline constexpr const char* kRampDown = "ramp_down";
inline constexpr const char* kMinUp = "min_up";
inline constexpr const char* kMinDown = "min_down";
inline constexpr const char* kStartup = "startup";
inline constexpr const char* kFlow = "flow";
inline constexpr const char* kBalance = "balance";
}  // namespace family

/// Builds the unit commitment MILP:
///   min sum_{g,t} (c^NL u + c^SU v + sum_s pi_s c P)
///   P >= p_min u;  P + r <= p_max u;  r <= R10 u
///   sum_q r_q >= P_g + r_g                      for every g, t, s
///   P_t - P_{t-1} <= R^hr u_{t-1} + R^SU v_t
///   P_{t-1} - P_t <= R^hr u_t + R^SD (v_t - u_t + u_{t-1})
///   sum_{q=t-UT+1..t} v_q <= u_t  (t >= UT);  sum_{q=t+1..t+DT} v_q <= 1 - u_t
///   (t <= T-DT);  v_t >= u_t - u_{t-1}
///   flow_k = base * b_k (theta_from - theta_to);  nodal balance with net load
/// Flow limits, the reference angle, 0 <= P <= p_max and 0 <= r <= R10 are
/// variable bounds. Values at t = 0 come from options.initial; carry-over
/// up/down time fixes the affected commitment variables.
ScucModel build_scuc(const grid::PowerSystem& system, const grid::LoadProfile& profile,
                     const ScucOptions& options = {});

/// Number of rows per family, keyed by the name prefix before the first '/'.
std::map<std::string, int> family_counts(const milp::MilpProblem& problem);

struct ScucSolution {
  CommitmentSchedule schedule;
  std::vector<Matrix> output;   // per scenario [generator x period]
  std::vector<Matrix> reserve;  // per scenario [generator x period]
  std::vector<Matrix> flow;     // per scenario [line x period]
  std::vector<Matrix> angle;    // per scenario [bus x period]
  double objective = 0.0;
};

/// Throws ValidationError when the solution carries no feasible point.
ScucSolution extract_schedule(const milp::MilpSolution& solution, const ScucModel& model,
                              double integrality_tolerance = 1e-6);

}  // namespace ucr::scuc
