// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include "ucr/ml/metrics.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "ucr/core/error.hpp"

namespace ucr::ml {
namespace {

void check_same_shape(const BinaryMatrix& a, const BinaryMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(fmt::format("label shapes differ: {} x {} vs {} x {}", a.rows(),
                                     a.cols(), b.rows(), b.cols()));
  }
}

}  // namespace

BinaryMatrix PredictionSet::labels(double threshold) const {
  BinaryMatrix out(probability.rows(), probability.cols());
  for (std::size_t i = 0; i < probability.size(); ++i) {
    out.data()[i] = probability.data()[i] >= threshold;
  }
  return out;
}

Matrix PredictionSet::sample_probabilities(std::size_t sample) const {
  Matrix out(static_cast<std::size_t>(generators), static_cast<std::size_t>(periods));
  const auto row = probability.row(sample);
  std::copy(row.begin(), row.end(), out.data().begin());
  return out;
}

PredictionSet predict(const Model& model, const Matrix& raw, Execution execution) {
  PredictionSet out;
  out.generators = model.generators;
  out.periods = model.periods;
  out.probability = probabilities(model, model.features.transform(raw), execution);
  return out;
}

double accuracy(const BinaryMatrix& predicted, const BinaryMatrix& actual) {
  check_same_shape(predicted, actual);
  if (actual.empty()) return 1.0;
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    wrong += predicted.data()[i] != actual.data()[i];
  }
  return 1.0 - static_cast<double>(wrong) / static_cast<double>(actual.size());
}

Confusion confusion(const BinaryMatrix& predicted, const BinaryMatrix& actual) {
  check_same_shape(predicted, actual);
  Confusion c;
  if (actual.empty()) return c;
  // tp, tn, fp, fn
  std::size_t count[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const bool p = predicted.data()[i];
    const bool a = actual.data()[i];
    ++count[p ? (a ? 0 : 2) : (a ? 3 : 1)];
  }
  const double n = static_cast<double>(actual.size());
  double frac[4];
  for (int k = 0; k < 4; ++k) frac[k] = static_cast<double>(count[k]) / n;
  // The largest class takes the remainder so the fractions add up to one;
  // empty classes stay exactly zero.
  const int largest = static_cast<int>(std::max_element(count, count + 4) - count);
  double others = 0.0;
  for (int k = 0; k < 4; ++k) {
    if (k != largest) others += frac[k];
  }
  frac[largest] = 1.0 - others;
  c.true_positive = frac[0];
  c.true_negative = frac[1];
  c.false_positive = frac[2];
  c.false_negative = frac[3];
  return c;
}

}  // namespace ucr::ml
