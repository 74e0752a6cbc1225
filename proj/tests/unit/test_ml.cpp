// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <functional>

#include "support/ml_oracle.hpp"
#include "ucr/core/error.hpp"
#include "ucr/core/rng.hpp"
#include "ucr/ml/metrics.hpp"
#include "ucr/ml/model.hpp"

using namespace ucr;
using namespace ucr::ml;

namespace {

// Two raw features (buses = 2, periods = 1); `label` gives one target per
// generator.
TrainingData toy(int samples, int generators, std::uint64_t seed,
                 const std::function<std::vector<int>(double, double)>& label) {
  TrainingData d;
  d.buses = 2;
  d.periods = 1;
  d.generators = generators;
  d.inputs = Matrix(samples, 2);
  d.targets = BinaryMatrix(samples, generators);
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    const double a = rng.uniform(0, 1);
    const double b = rng.uniform(0, 1);
    d.inputs(i, 0) = a;
    d.inputs(i, 1) = b;
    const auto y = label(a, b);
    for (int g = 0; g < generators; ++g) d.targets(i, g) = y[g];
  }
  return d;
}

}  // namespace

TEST_CASE("features: min-max scaling with constant columns dropped") {
  Matrix raw(3, 4);
  const double rows[3][4] = {{1, 5, 7, 0}, {3, 5, 9, 2}, {2, 5, 8, 4}};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 4; ++j) raw(i, j) = rows[i][j];
  }
  const auto spec = FeatureSpec::fit(raw, 2, 2, 1);
  CHECK(spec.dropped == std::vector<int>{1});
  CHECK(spec.kept == std::vector<int>{0, 2, 3});
  const Matrix x = spec.transform(raw);
  CHECK(x(0, 0) == 0.0);
  CHECK(x(1, 0) == 1.0);
  CHECK(x(2, 0) == 0.5);
  CHECK(x(2, 2) == 1.0);
  CHECK_THROWS_AS(spec.transform(Matrix(1, 3)), DimensionError);
  CHECK_THROWS_AS(FeatureSpec::fit(raw, 3, 2, 1), DimensionError);
}

TEST_CASE("gradients match central differences") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    CAPTURE(seed);
    CHECK(testing::gradient_error(ModelKind::kMtlr, seed) <= 1e-4);
    CHECK(testing::gradient_error(ModelKind::kMlp, 100 + seed) <= 1e-4);
  }
}

TEST_CASE("serial and parallel kernels agree bit for bit") {
  const auto data = toy(97, 5, 3, [](double a, double b) {
    return std::vector<int>{a > b, a + b > 1, a > 0.3, b > 0.6, a * b > 0.2};
  });
  for (ModelKind kind : {ModelKind::kMtlr, ModelKind::kMlp}) {
    TrainConfig serial;
    serial.learning_rate = 0.01;
    serial.iterations = 30;
    serial.hidden = 7;
    serial.execution = Execution::kSerial;
    TrainConfig parallel = serial;
    parallel.execution = Execution::kParallel;
    Model a = train(kind, data, serial);
    Model b = train(kind, data, parallel);
    a.config.execution = b.config.execution;
    CHECK(a == b);
    CHECK(predict(a, data.inputs, Execution::kSerial).probability ==
          predict(b, data.inputs, Execution::kParallel).probability);
  }
}

TEST_CASE("mtlr: always-on target is learned") {
  const auto data = toy(40, 2, 5, [](double a, double) { return std::vector<int>{1, a > 0.5}; });
  TrainConfig c;
  c.learning_rate = 0.05;
  c.iterations = 400;
  const Model m = train(ModelKind::kMtlr, data, c);
  const auto pred = predict(m, data.inputs);
  for (std::size_t i = 0; i < pred.samples(); ++i) CHECK(pred.at(i, 0, 0) >= 0.99);
  CHECK(m.monotone);
}

TEST_CASE("mtlr: linearly separable targets are fit exactly") {
  const auto data = toy(60, 1, 8, [](double a, double b) { return std::vector<int>{a + 2 * b > 1.2}; });
  TrainConfig c;
  c.learning_rate = 0.05;
  c.iterations = 3000;
  const Model m = train(ModelKind::kMtlr, data, c);
  CHECK(accuracy(predict(m, data.inputs).labels(), data.targets) == 1.0);
}

TEST_CASE("xor needs the hidden layer") {
  TrainingData d;
  d.buses = 2;
  d.periods = 1;
  d.generators = 1;
  d.inputs = Matrix(4, 2);
  d.targets = BinaryMatrix(4, 1);
  const int pts[4][3] = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
  for (int i = 0; i < 4; ++i) {
    d.inputs(i, 0) = pts[i][0];
    d.inputs(i, 1) = pts[i][1];
    d.targets(i, 0) = static_cast<std::uint8_t>(pts[i][2]);
  }
  TrainConfig c;
  c.learning_rate = 0.1;
  c.iterations = 4000;
  const Model linear = train(ModelKind::kMtlr, d, c);
  CHECK(accuracy(predict(linear, d.inputs).labels(), d.targets) < 1.0);
  c.hidden = 4;
  c.seed = 2;
  const Model mlp = train(ModelKind::kMlp, d, c);
  CHECK(accuracy(predict(mlp, d.inputs).labels(), d.targets) == 1.0);
}

TEST_CASE("untrained models") {
  const auto data = toy(10, 3, 1, [](double a, double) { return std::vector<int>{a > 0.5, 0, 1}; });
  TrainConfig c;
  c.iterations = 0;
  const Model mtlr = train(ModelKind::kMtlr, data, c);
  const auto flat = predict(mtlr, data.inputs);
  for (double p : flat.probability.data()) CHECK(p == 0.5);
  const Model mlp = train(ModelKind::kMlp, data, c);
  CHECK(mlp.hidden() == 6);
  const auto spread = predict(mlp, data.inputs);
  for (double p : spread.probability.data()) {
    CHECK(p > 0.0);
    CHECK(p < 1.0);
  }
  CHECK(mlp.loss_curve.size() == 1);
}

TEST_CASE("mtlr: probability rises with a positively weighted feature") {
  const auto data = toy(30, 1, 4, [](double a, double) { return std::vector<int>{a > 0.4}; });
  TrainConfig c;
  c.learning_rate = 0.05;
  c.iterations = 200;
  const Model m = train(ModelKind::kMtlr, data, c);
  REQUIRE(m.w1(0, 0) > 0.0);
  Matrix raw(2, 2);
  raw(0, 0) = 0.3;
  raw(1, 0) = 0.31;
  raw(0, 1) = raw(1, 1) = 0.5;
  const auto p = predict(m, raw);
  CHECK(p.at(1, 0, 0) > p.at(0, 0, 0));
  CHECK_THROWS_AS(predict(m, Matrix(1, 3)), DimensionError);
}

TEST_CASE("accuracy and confusion arithmetic") {
  BinaryMatrix truth(3, 33 * 24);
  Rng rng(1);
  for (auto& v : truth.data()) v = static_cast<std::uint8_t>(rng.below(2));
  CHECK(accuracy(truth, truth) == 1.0);
  BinaryMatrix one = truth;
  one(1, 100) ^= 1;
  CHECK(accuracy(one, truth) == doctest::Approx(1.0 - 1.0 / (3 * 792)).epsilon(1e-15));
  BinaryMatrix flipped = truth;
  for (auto& v : flipped.data()) v ^= 1;
  CHECK(accuracy(flipped, truth) == 0.0);

  const Confusion same = confusion(truth, truth);
  CHECK(same.false_positive == 0.0);
  CHECK(same.false_negative == 0.0);
  const Confusion inverse = confusion(flipped, truth);
  CHECK(inverse.true_positive == 0.0);
  CHECK(inverse.true_negative == 0.0);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng r(seed);
    BinaryMatrix p(7, 1 + r.below(40));
    BinaryMatrix a(p.rows(), p.cols());
    for (auto& v : p.data()) v = static_cast<std::uint8_t>(r.below(2));
    for (auto& v : a.data()) v = static_cast<std::uint8_t>(r.below(2));
    const Confusion c = confusion(p, a);
    CHECK(c.true_positive + c.true_negative + c.false_positive + c.false_negative ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(accuracy(BinaryMatrix(2, 2), BinaryMatrix(2, 3)), DimensionError);
}

TEST_CASE("labels threshold at one half") {
  PredictionSet p;
  p.generators = 1;
  p.periods = 3;
  p.probability = Matrix(1, 3);
  p.probability(0, 0) = 0.5;
  p.probability(0, 1) = 0.4999999;
  p.probability(0, 2) = 0.9;
  const auto l = p.labels();
  CHECK(l(0, 0) == 1);
  CHECK(l(0, 1) == 0);
  CHECK(l(0, 2) == 1);
}

TEST_CASE("tune: selection and divergence") {
  const auto data = toy(50, 2, 6, [](double a, double b) { return std::vector<int>{a > b, b > 0.5}; });
  TrainConfig base;
  base.iterations = 100;
  SUBCASE("singleton sweep") {
    const auto r = tune(ModelKind::kMtlr, data, base, {0.001});
    CHECK(r.learning_rate == 0.001);
    CHECK(r.sweep.size() == 1);
  }
  SUBCASE("a rate with a rising loss is never selected") {
    const auto r = tune(ModelKind::kMtlr, data, base, {0.001, 0.01, 5.0});
    REQUIRE(r.sweep.size() == 3);
    CHECK_FALSE(r.sweep[2].monotone);
    CHECK(r.learning_rate != 5.0);
    CHECK(r.model.monotone);
    CHECK(r.model.config.learning_rate == r.learning_rate);
  }
  SUBCASE("nothing qualifies") {
    CHECK_THROWS_AS(tune(ModelKind::kMtlr, data, base, {5.0, 50.0}), DivergenceError);
  }
  CHECK_THROWS_AS(tune(ModelKind::kMtlr, data, base, {}), ValidationError);
}

TEST_CASE("model files round trip") {
  const auto data = toy(25, 2, 9, [](double a, double b) { return std::vector<int>{a > b, 1}; });
  for (ModelKind kind : {ModelKind::kMtlr, ModelKind::kMlp}) {
    TrainConfig c;
    c.learning_rate = 0.02;
    c.iterations = 20;
    c.hidden = 3;
    const Model m = train(kind, data, c);
    const std::string text = serialize_model(m);
    Model back = parse_model(text);
    back.config.execution = m.config.execution;
    CHECK(back == m);
    CHECK(serialize_model(back) == text);
    CHECK(predict(back, data.inputs).probability == predict(m, data.inputs).probability);
  }
  CHECK_THROWS_AS(parse_model("{\"format\": \"other\"}"), Error);
  CHECK(loss_curve_csv({2.5, 1.25}) == "iteration,loss\n0,2.5\n1,1.25\n");
}
