// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include "ucr/grid/power_system.hpp"

#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "ucr/core/error.hpp"

namespace ucr::grid {
namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

void check_generator(const Generator& g) {
  const std::string who = fmt::format("generator {}", g.id);
  require(std::isfinite(g.p_min) && std::isfinite(g.p_max),
          who + ": p_min/p_max must be finite");
  require(0.0 <= g.p_min && g.p_min <= g.p_max,
          who + ": requires 0 <= p_min <= p_max");
  require(g.ramp_hourly >= 0.0 && g.ramp_startup >= 0.0 &&
              g.ramp_shutdown >= 0.0 && g.ramp_10min >= 0.0,
          who + ": ramp limits must be non-negative");
  require(g.min_up >= 1 && g.min_down >= 1,
          who + ": min_up and min_down must be >= 1");
  require(g.cost_linear >= 0.0 && g.cost_no_load >= 0.0 &&
              g.cost_startup >= 0.0,
          who + ": costs must be non-negative");
}

}  // namespace

PowerSystem::PowerSystem(SystemData data) : data_(std::move(data)) {
  require(!data_.buses.empty(), "system has no buses");
  require(data_.horizon >= 1, "horizon must be >= 1");
  require(data_.base_mva > 0.0, "base_mva must be positive");
  require(!data_.scenario_probabilities.empty(),
          "scenario_probabilities must not be empty");
  double prob_sum = 0.0;
  for (double p : data_.scenario_probabilities) {
    require(p >= 0.0, "scenario probabilities must be non-negative");
    prob_sum += p;
  }
  require(std::abs(prob_sum - 1.0) <= 1e-9,
          fmt::format("scenario probabilities sum to {}, expected 1", prob_sum));

  for (std::size_t n = 0; n < data_.buses.size(); ++n) {
    const auto [it, inserted] =
        bus_index_.emplace(data_.buses[n].id, static_cast<int>(n));
    require(inserted, fmt::format("duplicate bus id {}", data_.buses[n].id));
  }
  const int nb = bus_count();
  gens_at_.assign(nb, {});
  res_at_.assign(nb, {});
  lines_in_.assign(nb, {});
  lines_out_.assign(nb, {});

  for (int g = 0; g < generator_count(); ++g) {
    const Generator& gen = data_.generators[g];
    check_generator(gen);
    const auto it = bus_index_.find(gen.bus);
    require(it != bus_index_.end(),
            fmt::format("generator {} references unknown bus {}", gen.id,
                        gen.bus));
    generator_bus_.push_back(it->second);
    gens_at_[it->second].push_back(g);
  }
  for (int k = 0; k < line_count(); ++k) {
    const Line& line = data_.lines[k];
    const auto from = bus_index_.find(line.from_bus);
    const auto to = bus_index_.find(line.to_bus);
    require(from != bus_index_.end(),
            fmt::format("line {} references unknown bus {}", line.id,
                        line.from_bus));
    require(to != bus_index_.end(),
            fmt::format("line {} references unknown bus {}", line.id,
                        line.to_bus));
    require(line.from_bus != line.to_bus,
            fmt::format("line {} connects bus {} to itself", line.id,
                        line.from_bus));
    require(line.flow_limit > 0.0,
            fmt::format("line {}: flow_limit must be positive", line.id));
    require(line.susceptance != 0.0 && std::isfinite(line.susceptance),
            fmt::format("line {}: susceptance must be non-zero", line.id));
    line_from_.push_back(from->second);
    line_to_.push_back(to->second);
    lines_out_[from->second].push_back(k);
    lines_in_[to->second].push_back(k);
  }
  for (int w = 0; w < renewable_count(); ++w) {
    const RenewableUnit& unit = data_.renewables[w];
    const auto it = bus_index_.find(unit.bus);
    require(it != bus_index_.end(),
            fmt::format("renewable {} references unknown bus {}", unit.id,
                        unit.bus));
    require(unit.output.rows() == static_cast<std::size_t>(data_.horizon) &&
                unit.output.cols() == data_.scenario_probabilities.size(),
            fmt::format("renewable {}: output must be {} periods x {} scenarios",
                        unit.id, data_.horizon,
                        data_.scenario_probabilities.size()));
    for (double v : unit.output.data()) {
      require(v >= 0.0 && std::isfinite(v),
              fmt::format("renewable {}: outputs must be non-negative", unit.id));
    }
    renewable_bus_.push_back(it->second);
    res_at_[it->second].push_back(w);
  }

  if (data_.reference_bus < 0) {
    reference_bus_ = 0;
    data_.reference_bus = data_.buses.front().id;
  } else {
    const auto it = bus_index_.find(data_.reference_bus);
    require(it != bus_index_.end(),
            fmt::format("reference bus {} does not exist", data_.reference_bus));
    reference_bus_ = it->second;
  }
}

int PowerSystem::bus_index(int id) const {
  const auto it = bus_index_.find(id);
  if (it == bus_index_.end()) {
    throw ValidationError(fmt::format("unknown bus id {}", id));
  }
  return it->second;
}

double PowerSystem::total_capacity() const {
  return std::accumulate(
      data_.generators.begin(), data_.generators.end(), 0.0,
      [](double acc, const Generator& g) { return acc + g.p_max; });
}

Matrix net_load(const PowerSystem& system, const LoadProfile& profile, int s) {
  if (!profile.scenario_net_load.empty()) {
    return profile.scenario_net_load.at(static_cast<std::size_t>(s));
  }
  Matrix out = profile.demand;
  for (int w = 0; w < system.renewable_count(); ++w) {
    const int n = system.renewable_bus(w);
    const Matrix& output = system.renewable(w).output;
    for (int t = 0; t < system.horizon(); ++t) out(n, t) -= output(t, s);
  }
  return out;
}

void validate_profile(const PowerSystem& system, const LoadProfile& profile) {
  const auto nb = static_cast<std::size_t>(system.bus_count());
  const auto nt = static_cast<std::size_t>(system.horizon());
  if (profile.demand.rows() != nb || profile.demand.cols() != nt) {
    throw DimensionError(fmt::format(
        "load profile is {} buses x {} periods, system has {} x {}",
        profile.demand.rows(), profile.demand.cols(), nb, nt));
  }
  for (std::size_t n = 0; n < nb; ++n) {
    for (std::size_t t = 0; t < nt; ++t) {
      const double d = profile.demand(n, t);
      if (!(d >= 0.0) || !std::isfinite(d)) {
        throw ValidationError(fmt::format(
            "negative demand {} at bus {} period {}", d,
            system.bus(static_cast<int>(n)).id, t + 1));
      }
    }
  }
  if (!profile.scenario_net_load.empty()) {
    if (profile.scenario_net_load.size() !=
        static_cast<std::size_t>(system.scenario_count())) {
      throw DimensionError("scenario net load count does not match system");
    }
    for (const Matrix& m : profile.scenario_net_load) {
      if (m.rows() != nb || m.cols() != nt) {
        throw DimensionError("scenario net load has wrong shape");
      }
    }
  }
}

}  // namespace ucr::grid
