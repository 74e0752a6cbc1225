// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "ucr/core/grid.hpp"

namespace ucr::grid {

struct Bus {
  int id = 0;
  std::string name;
  bool operator==(const Bus&) const = default;
};

/// Thermal unit. Power in MW, ramps in MW (per hour for ramp_hourly), costs in
/// $/MWh, $/h and $ respectively, up/down times in periods.
struct Generator {
  int id = 0;
  std::string name;
  int bus = 0;
  double p_min = 0.0;
  double p_max = 0.0;
  double cost_linear = 0.0;
  double cost_no_load = 0.0;
  double cost_startup = 0.0;
  double ramp_hourly = 0.0;
  double ramp_startup = 0.0;
  double ramp_shutdown = 0.0;
  double ramp_10min = 0.0;
  int min_up = 1;
  int min_down = 1;
  bool operator==(const Generator&) const = default;
};

/// Branch from `from_bus` (sending) to `to_bus` (receiving). Susceptance in
/// per unit on the system MVA base, flow limit in MW.
struct Line {
  int id = 0;
  int from_bus = 0;
  int to_bus = 0;
  double susceptance = 0.0;
  double flow_limit = 0.0;
  bool operator==(const Line&) const = default;
};

struct RenewableUnit {
  int id = 0;
  int bus = 0;
  Matrix output;  // [period x scenario], MW
  bool operator==(const RenewableUnit&) const = default;
};

/// Plain description as read from a system file. Converted into a validated
/// PowerSystem before use.
struct SystemData {
  std::string name;
  std::vector<Bus> buses;
  std::vector<Generator> generators;
  std::vector<Line> lines;
  std::vector<RenewableUnit> renewables;
  int horizon = 24;
  int reference_bus = -1;  // bus id; -1 selects the first bus
  double base_mva = 100.0;
  std::vector<double> scenario_probabilities{1.0};
  bool operator==(const SystemData&) const = default;
};

/// Validated, immutable power system with resolved topology. All per-element
/// accessors take internal indices (0..count-1), not file ids.
class PowerSystem {
 public:
  /// Throws ValidationError naming the violated invariant.
  explicit PowerSystem(SystemData data);

  const SystemData& data() const { return data_; }
  const std::string& name() const { return data_.name; }
  int bus_count() const { return static_cast<int>(data_.buses.size()); }
  int generator_count() const {
    return static_cast<int>(data_.generators.size());
  }
  int line_count() const { return static_cast<int>(data_.lines.size()); }
  int renewable_count() const {
    return static_cast<int>(data_.renewables.size());
  }
  int horizon() const { return data_.horizon; }
  int scenario_count() const {
    return static_cast<int>(data_.scenario_probabilities.size());
  }
  double base_mva() const { return data_.base_mva; }
  const std::vector<double>& scenario_probabilities() const {
    return data_.scenario_probabilities;
  }

  const Bus& bus(int n) const { return data_.buses[n]; }
  const Generator& generator(int g) const { return data_.generators[g]; }
  const Line& line(int k) const { return data_.lines[k]; }
  const RenewableUnit& renewable(int w) const { return data_.renewables[w]; }

  /// Internal index of a bus id; throws ValidationError when unknown.
  int bus_index(int id) const;
  int reference_bus_index() const { return reference_bus_; }

  int generator_bus(int g) const { return generator_bus_[g]; }
  int line_from(int k) const { return line_from_[k]; }
  int line_to(int k) const { return line_to_[k]; }
  int renewable_bus(int w) const { return renewable_bus_[w]; }

  const std::vector<int>& generators_at(int n) const { return gens_at_[n]; }
  const std::vector<int>& renewables_at(int n) const { return res_at_[n]; }
  /// Lines whose receiving end is bus n.
  const std::vector<int>& lines_into(int n) const { return lines_in_[n]; }
  /// Lines whose sending end is bus n.
  const std::vector<int>& lines_out_of(int n) const { return lines_out_[n]; }

  double total_capacity() const;

 private:
  SystemData data_;
  std::unordered_map<int, int> bus_index_;
  int reference_bus_ = 0;
  std::vector<int> generator_bus_;
  std::vector<int> line_from_;
  std::vector<int> line_to_;
  std::vector<int> renewable_bus_;
  std::vector<std::vector<int>> gens_at_;
  std::vector<std::vector<int>> res_at_;
  std::vector<std::vector<int>> lines_in_;
  std::vector<std::vector<int>> lines_out_;
};

/// Nodal demand d[n][t] in MW, optionally with explicit per-scenario net load.
struct LoadProfile {
  Matrix demand;                        // [bus x period]
  std::vector<Matrix> scenario_net_load;  // empty, or one [bus x period] per scenario
  bool operator==(const LoadProfile&) const = default;
};

/// Net nodal load of scenario s: explicit net load when present, otherwise
/// demand minus the renewable output connected at each bus.
Matrix net_load(const PowerSystem& system, const LoadProfile& profile, int s);

/// Checks shape and sign of a profile against a system; throws DimensionError
/// or ValidationError.
void validate_profile(const PowerSystem& system, const LoadProfile& profile);

}  // namespace ucr::grid
