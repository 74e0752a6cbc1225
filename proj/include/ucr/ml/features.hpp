// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "ucr/core/grid.hpp"
#include "ucr/datagen/dataset.hpp"
#include "ucr/grid/power_system.hpp"

namespace ucr::ml {

/// Raw input layout: nodal demand flattened bus-major ([bus][period]); in
/// stochastic mode the net load of every scenario, scenario-major.
std::vector<double> raw_features(const grid::PowerSystem& system, const Matrix& demand,
                                 bool stochastic);

/// Min-max scaling fitted on training rows. Columns that are constant on the
/// training set are dropped and remembered.
struct FeatureSpec {
  int buses = 0;
  int periods = 0;
  int scenarios = 1;
  std::vector<int> kept;  // raw column of each retained feature
  std::vector<int> dropped;
  std::vector<double> min;
  std::vector<double> max;

  int raw_size() const { return buses * periods * scenarios; }
  int size() const { return static_cast<int>(kept.size()); }

  static FeatureSpec fit(const Matrix& raw, int buses, int periods, int scenarios);
  /// Rows of raw features to rows of scaled features; throws DimensionError
  /// on a width mismatch.
  Matrix transform(const Matrix& raw) const;

  bool operator==(const FeatureSpec&) const = default;
};

/// Raw inputs and 0/1 targets ([generator][period] flattened) of a sample set.
struct TrainingData {
  Matrix inputs;         // [sample x raw feature]
  BinaryMatrix targets;  // [sample x generator*period]
  int buses = 0;
  int generators = 0;
  int periods = 0;
  int scenarios = 1;
};

TrainingData make_training_data(const grid::PowerSystem& system,
                                const std::vector<const datagen::Sample*>& samples,
                                bool stochastic);

}  // namespace ucr::ml
