// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include "support/ml_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ucr/core/rng.hpp"

namespace ucr::testing {
namespace {

void randomize(ml::Model& m, Rng& rng) {
  for (double& w : m.w1.data()) w = rng.uniform(-1, 1);
  for (double& w : m.b1) w = rng.uniform(-1, 1);
  for (double& w : m.w2.data()) w = rng.uniform(-1, 1);
  for (double& w : m.b2) w = rng.uniform(-1, 1);
}

std::vector<double*> parameters(ml::Model& m) {
  std::vector<double*> out;
  for (double& w : m.w1.data()) out.push_back(&w);
  for (double& w : m.b1) out.push_back(&w);
  for (double& w : m.w2.data()) out.push_back(&w);
  for (double& w : m.b2) out.push_back(&w);
  return out;
}

std::vector<double> flatten(const ml::Gradient& g) {
  std::vector<double> out = g.w1.data();
  out.insert(out.end(), g.b1.begin(), g.b1.end());
  out.insert(out.end(), g.w2.data().begin(), g.w2.data().end());
  out.insert(out.end(), g.b2.begin(), g.b2.end());
  return out;
}

}  // namespace

double gradient_error(ml::ModelKind kind, std::uint64_t seed) {
  Rng rng(seed);
  const int features = 2 + static_cast<int>(rng.below(4));
  const int gens = 1 + static_cast<int>(rng.below(3));
  const int samples = 3 + static_cast<int>(rng.below(6));
  ml::FeatureSpec spec;
  spec.buses = features;
  spec.periods = 1;
  for (int j = 0; j < features; ++j) {
    spec.kept.push_back(j);
    spec.min.push_back(0);
    spec.max.push_back(1);
  }
  ml::TrainConfig config;
  config.hidden = 2 + static_cast<int>(rng.below(4));
  config.seed = seed;
  ml::Model m = ml::initial_model(kind, spec, gens, 1, config);
  randomize(m, rng);
  Matrix x(samples, features);
  for (double& v : x.data()) v = rng.uniform(-1, 2);
  BinaryMatrix y(samples, gens);
  for (auto& v : y.data()) v = static_cast<std::uint8_t>(rng.below(2));

  ml::Gradient g;
  ml::evaluate(m, x, y, Execution::kSerial, &g);
  const auto analytic = flatten(g);
  const auto params = parameters(m);
  if (params.size() != analytic.size()) throw std::logic_error("gradient layout mismatch");
  double worst = 0.0;
  const double h = 1e-5;
  for (std::size_t p = 0; p < params.size(); ++p) {
    const double keep = *params[p];
    *params[p] = keep + h;
    const double up = ml::evaluate(m, x, y, Execution::kSerial);
    *params[p] = keep - h;
    const double down = ml::evaluate(m, x, y, Execution::kSerial);
    *params[p] = keep;
    const double numeric = (up - down) / (2 * h);
    const double scale = std::max({std::abs(numeric), std::abs(analytic[p]), 1e-3});
    worst = std::max(worst, std::abs(numeric - analytic[p]) / scale);
  }
  return worst;
}

}  // namespace ucr::testing
