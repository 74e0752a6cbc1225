// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ucr/core/grid.hpp"
#include "ucr/ml/model.hpp"

namespace ucr::ml {

inline constexpr double kDecisionThreshold = 0.5;

/// Probabilities per [sample x generator*period], generator-major.
struct PredictionSet {
  Matrix probability;
  int generators = 0;
  int periods = 0;

  std::size_t samples() const { return probability.rows(); }
  double at(std::size_t sample, int g, int t) const {
    return probability(sample, static_cast<std::size_t>(g) * periods + t);
  }
  /// u = 1 where probability >= threshold.
  BinaryMatrix labels(double threshold = kDecisionThreshold) const;
  /// One sample as [generator x period].
  Matrix sample_probabilities(std::size_t sample) const;
};

/// Scales `raw` with the model's stored feature spec; throws DimensionError
/// on a feature-width mismatch.
PredictionSet predict(const Model& model, const Matrix& raw,
                      Execution execution = Execution::kParallel);

/// 1 - mean |u - u_hat| over all cells.
double accuracy(const BinaryMatrix& predicted, const BinaryMatrix& actual);

struct Confusion {
  double true_positive = 0.0;   // predicted ON, actually ON
  double true_negative = 0.0;   // predicted OFF, actually OFF
  double false_positive = 0.0;  // predicted ON, actually OFF
  double false_negative = 0.0;  // predicted OFF, actually ON
};

/// Fractions over all cells.
Confusion confusion(const BinaryMatrix& predicted, const BinaryMatrix& actual);

}  // namespace ucr::ml
