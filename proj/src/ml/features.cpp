// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include "ucr/ml/features.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "ucr/core/error.hpp"

namespace ucr::ml {

std::vector<double> raw_features(const grid::PowerSystem& system, const Matrix& demand,
                                 bool stochastic) {
  std::vector<double> out;
  if (!stochastic) {
    out = demand.data();
    return out;
  }
  grid::LoadProfile profile;
  profile.demand = demand;
  for (int s = 0; s < system.scenario_count(); ++s) {
    const Matrix net = grid::net_load(system, profile, s);
    out.insert(out.end(), net.data().begin(), net.data().end());
  }
  return out;
}

FeatureSpec FeatureSpec::fit(const Matrix& raw, int buses, int periods, int scenarios) {
  FeatureSpec spec;
  spec.buses = buses;
  spec.periods = periods;
  spec.scenarios = scenarios;
  if (raw.cols() != static_cast<std::size_t>(spec.raw_size())) {
    throw DimensionError(fmt::format("expected {} raw features, got {}", spec.raw_size(),
                                     raw.cols()));
  }
  if (raw.rows() == 0) throw ValidationError("cannot fit features on zero samples");
  for (std::size_t j = 0; j < raw.cols(); ++j) {
    double lo = raw(0, j);
    double hi = raw(0, j);
    for (std::size_t i = 1; i < raw.rows(); ++i) {
      lo = std::min(lo, raw(i, j));
      hi = std::max(hi, raw(i, j));
    }
    if (hi - lo <= 1e-12 * std::max(1.0, std::abs(hi))) {
      spec.dropped.push_back(static_cast<int>(j));
      continue;
    }
    spec.kept.push_back(static_cast<int>(j));
    spec.min.push_back(lo);
    spec.max.push_back(hi);
  }
  return spec;
}

Matrix FeatureSpec::transform(const Matrix& raw) const {
  if (raw.cols() != static_cast<std::size_t>(raw_size())) {
    throw DimensionError(fmt::format("model expects {} raw features, got {}", raw_size(),
                                     raw.cols()));
  }
  Matrix out(raw.rows(), kept.size());
  for (std::size_t i = 0; i < raw.rows(); ++i) {
    for (std::size_t f = 0; f < kept.size(); ++f) {
      out(i, f) = (raw(i, kept[f]) - min[f]) / (max[f] - min[f]);
    }
  }
  return out;
}

TrainingData make_training_data(const grid::PowerSystem& system,
                                const std::vector<const datagen::Sample*>& samples,
                                bool stochastic) {
  TrainingData data;
  data.buses = system.bus_count();
  data.generators = system.generator_count();
  data.periods = system.horizon();
  data.scenarios = stochastic ? system.scenario_count() : 1;
  const std::size_t width =
      static_cast<std::size_t>(data.buses) * data.periods * data.scenarios;
  const std::size_t targets = static_cast<std::size_t>(data.generators) * data.periods;
  data.inputs = Matrix(samples.size(), width);
  data.targets = BinaryMatrix(samples.size(), targets);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const datagen::Sample& s = *samples[i];
    if (s.demand.rows() != static_cast<std::size_t>(data.buses) ||
        s.demand.cols() != static_cast<std::size_t>(data.periods) ||
        s.schedule.generators() != data.generators) {
      throw DimensionError(fmt::format("sample {} does not match system '{}'", s.id,
                                       system.name()));
    }
    const auto x = raw_features(system, s.demand, stochastic);
    std::copy(x.begin(), x.end(), data.inputs.row(i).begin());
    std::copy(s.schedule.on.data().begin(), s.schedule.on.data().end(),
              data.targets.row(i).begin());
  }
  return data;
}

}  // namespace ucr::ml
