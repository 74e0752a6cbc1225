// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include "ucr/ml/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>
#include <json.hpp>

#include "ucr/core/error.hpp"
#include "ucr/core/rng.hpp"
#include "ucr/core/text.hpp"
#include "ucr/datagen/dataset.hpp"
#include "ucr/ml/metrics.hpp"

namespace ucr::ml {
namespace {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// -[y log s(z) + (1 - y) log(1 - s(z))] without forming s(z).
double cross_entropy(double z, int y) {
  const double softplus = z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
  return softplus - (y ? z : 0.0);
}

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

// Logits of one linear layer for every sample: out(i, k) = b_k + w_k . x_i.
void affine(const Matrix& x, const Matrix& w, const std::vector<double>& b, Matrix& out,
            Execution execution) {
  const std::size_t n_in = w.cols();
  out = Matrix(x.rows(), w.rows());
  parallel_for(execution, x.rows(), [&](std::size_t i) {
    const double* xi = x.row(i).data();
    for (std::size_t k = 0; k < w.rows(); ++k) {
      out(i, k) = b[k] + dot(w.row(k).data(), xi, n_in);
    }
  });
}

// grad_w(k, :) = scale * sum_i e(i, k) x(i, :), grad_b(k) = scale * sum_i e(i, k).
void accumulate(const Matrix& e, const Matrix& x, double scale, Matrix& grad_w,
                std::vector<double>& grad_b, Execution execution) {
  grad_w = Matrix(e.cols(), x.cols(), 0.0);
  grad_b.assign(e.cols(), 0.0);
  parallel_for(execution, e.cols(), [&](std::size_t k) {
    double* gk = grad_w.row(k).data();
    double bias = 0.0;
    for (std::size_t i = 0; i < e.rows(); ++i) {
      const double eik = e(i, k);
      if (eik == 0.0) continue;
      const double* xi = x.row(i).data();
      for (std::size_t j = 0; j < x.cols(); ++j) gk[j] += eik * xi[j];
      bias += eik;
    }
    for (std::size_t j = 0; j < x.cols(); ++j) gk[j] *= scale;
    grad_b[k] = bias * scale;
  });
}

void check_shapes(const Model& model, const Matrix& inputs, const BinaryMatrix* targets) {
  if (inputs.cols() != static_cast<std::size_t>(model.features.size())) {
    throw DimensionError(fmt::format("model expects {} features, got {}",
                                     model.features.size(), inputs.cols()));
  }
  if (targets && (targets->rows() != inputs.rows() ||
                  targets->cols() != static_cast<std::size_t>(model.targets()))) {
    throw DimensionError(fmt::format("targets are {} x {}, expected {} x {}", targets->rows(),
                                     targets->cols(), inputs.rows(), model.targets()));
  }
}

// Output-layer logits; `hidden` receives the tanh activations of an MLP.
Matrix logits(const Model& model, const Matrix& inputs, Execution execution, Matrix* hidden) {
  Matrix z;
  if (model.kind == ModelKind::kMtlr) {
    affine(inputs, model.w1, model.b1, z, execution);
    return z;
  }
  Matrix a;
  affine(inputs, model.w1, model.b1, a, execution);
  for (double& v : a.data()) v = std::tanh(v);
  affine(a, model.w2, model.b2, z, execution);
  if (hidden) *hidden = std::move(a);
  return z;
}

std::size_t default_hidden(int targets) {
  return static_cast<std::size_t>(std::clamp(2 * targets, 1, 256));
}

bool is_monotone(const std::vector<double>& curve) {
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (curve[i] > curve[i - 1]) return false;
  }
  return true;
}

}  // namespace

std::string to_string(ModelKind kind) { return kind == ModelKind::kMtlr ? "mtlr" : "mlp"; }

ModelKind parse_model_kind(const std::string& text) {
  if (text == "mtlr") return ModelKind::kMtlr;
  if (text == "mlp") return ModelKind::kMlp;
  throw ValidationError("model must be 'mtlr' or 'mlp', got '" + text + "'");
}

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw ValidationError(fmt::format("learning rate must be positive, got {}", learning_rate));
  }
  if (iterations < 0) throw ValidationError("iterations must be non-negative");
  if (hidden < 0) throw ValidationError("hidden width must be non-negative");
}

int Model::parameter_count() const {
  return static_cast<int>(w1.size() + b1.size() + w2.size() + b2.size());
}

Model initial_model(ModelKind kind, const FeatureSpec& features, int generators, int periods,
                    const TrainConfig& config) {
  Model m;
  m.kind = kind;
  m.features = features;
  m.generators = generators;
  m.periods = periods;
  m.config = config;
  const auto F = static_cast<std::size_t>(features.size());
  const auto K = static_cast<std::size_t>(generators) * periods;
  if (kind == ModelKind::kMtlr) {
    m.w1 = Matrix(K, F, 0.0);
    m.b1.assign(K, 0.0);
    return m;
  }
  const std::size_t H =
      config.hidden > 0 ? static_cast<std::size_t>(config.hidden) : default_hidden(static_cast<int>(K));
  m.config.hidden = static_cast<int>(H);
  Rng rng(derive_seed(config.seed, datagen::stream::kTraining, 0));
  const double r1 = std::sqrt(6.0 / static_cast<double>(F + H));
  const double r2 = std::sqrt(6.0 / static_cast<double>(H + K));
  m.w1 = Matrix(H, F);
  for (double& w : m.w1.data()) w = rng.uniform(-r1, r1);
  m.b1.assign(H, 0.0);
  m.w2 = Matrix(K, H);
  for (double& w : m.w2.data()) w = rng.uniform(-r2, r2);
  m.b2.assign(K, 0.0);
  return m;
}

double evaluate(const Model& model, const Matrix& inputs, const BinaryMatrix& targets,
                Execution execution, Gradient* gradient) {
  check_shapes(model, inputs, &targets);
  const std::size_t M = inputs.rows();
  if (M == 0) throw ValidationError("cannot evaluate on zero samples");
  Matrix hidden;
  Matrix z = logits(model, inputs, execution, &hidden);

  // Per-sample loss, summed afterwards in a fixed order.
  std::vector<double> per_sample(M, 0.0);
  Matrix error(M, z.cols());
  parallel_for(execution, M, [&](std::size_t i) {
    double loss = 0.0;
    for (std::size_t k = 0; k < z.cols(); ++k) {
      loss += cross_entropy(z(i, k), targets(i, k));
      error(i, k) = sigmoid(z(i, k)) - targets(i, k);
    }
    per_sample[i] = loss;
  });
  double total = 0.0;
  for (double l : per_sample) total += l;
  const double scale = 1.0 / static_cast<double>(M);
  if (!gradient) return total * scale;

  if (model.kind == ModelKind::kMtlr) {
    accumulate(error, inputs, scale, gradient->w1, gradient->b1, execution);
    gradient->w2 = Matrix();
    gradient->b2.clear();
    return total * scale;
  }
  accumulate(error, hidden, scale, gradient->w2, gradient->b2, execution);
  // Back through tanh: delta(i, h) = (sum_k e(i, k) w2(k, h)) (1 - a(i, h)^2).
  const std::size_t H = hidden.cols();
  Matrix delta(M, H);
  parallel_for(execution, M, [&](std::size_t i) {
    for (std::size_t h = 0; h < H; ++h) {
      double s = 0.0;
      for (std::size_t k = 0; k < error.cols(); ++k) s += error(i, k) * model.w2(k, h);
      delta(i, h) = s * (1.0 - hidden(i, h) * hidden(i, h));
    }
  });
  accumulate(delta, inputs, scale, gradient->w1, gradient->b1, execution);
  return total * scale;
}

Matrix probabilities(const Model& model, const Matrix& inputs, Execution execution) {
  check_shapes(model, inputs, nullptr);
  Matrix z = logits(model, inputs, execution, nullptr);
  for (double& v : z.data()) v = sigmoid(v);
  return z;
}

Model train(ModelKind kind, const TrainingData& data, const TrainConfig& config) {
  config.validate();
  if (data.inputs.rows() < 2) throw ValidationError("training needs at least two samples");
  const FeatureSpec spec =
      FeatureSpec::fit(data.inputs, data.buses, data.periods, data.scenarios);
  const Matrix x = spec.transform(data.inputs);
  Model model = initial_model(kind, spec, data.generators, data.periods, config);
  // The gradient is a mean over samples; the update uses the sum.
  const double step = config.learning_rate * static_cast<double>(x.rows());
  Gradient g;
  model.loss_curve.reserve(static_cast<std::size_t>(config.iterations) + 1);
  for (int it = 0;; ++it) {
    const bool last = it == config.iterations;
    const double loss = evaluate(model, x, data.targets, config.execution, last ? nullptr : &g);
    if (!std::isfinite(loss)) {
      throw DivergenceError(config.learning_rate,
                            fmt::format("loss became non-finite at iteration {} with learning "
                                        "rate {}",
                                        it, config.learning_rate));
    }
    model.loss_curve.push_back(loss);
    if (last) break;
    auto descend = [step](std::vector<double>& w, const std::vector<double>& d) {
      for (std::size_t i = 0; i < w.size(); ++i) w[i] -= step * d[i];
    };
    descend(model.w1.data(), g.w1.data());
    descend(model.b1, g.b1);
    if (kind == ModelKind::kMlp) {
      descend(model.w2.data(), g.w2.data());
      descend(model.b2, g.b2);
    }
  }
  model.monotone = is_monotone(model.loss_curve);
  return model;
}

TuneResult tune(ModelKind kind, const TrainingData& data, const TrainConfig& base,
                const std::vector<double>& sweep) {
  if (sweep.empty()) throw ValidationError("learning-rate sweep is empty");
  TuneResult result;
  int best = -1;
  for (double rate : sweep) {
    TrainConfig config = base;
    config.learning_rate = rate;
    SweepEntry entry;
    entry.learning_rate = rate;
    try {
      Model model = train(kind, data, config);
      entry.monotone = model.monotone;
      entry.loss_curve = model.loss_curve;
      entry.final_loss = model.loss_curve.back();
      const PredictionSet pred = predict(model, data.inputs, base.execution);
      entry.train_accuracy = accuracy(pred.labels(), data.targets);
      const bool better =
          best < 0 || entry.train_accuracy > result.sweep[best].train_accuracy ||
          (entry.train_accuracy == result.sweep[best].train_accuracy &&
           (entry.final_loss < result.sweep[best].final_loss ||
            (entry.final_loss == result.sweep[best].final_loss &&
             rate < result.sweep[best].learning_rate)));
      if (entry.monotone && better) {
        best = static_cast<int>(result.sweep.size());
        result.model = std::move(model);
      }
    } catch (const DivergenceError& e) {
      entry.diverged = true;
      entry.final_loss = std::numeric_limits<double>::quiet_NaN();
    }
    result.sweep.push_back(std::move(entry));
  }
  if (best < 0) {
    throw DivergenceError(sweep.back(),
                          "every learning rate in the sweep diverged or had a rising loss");
  }
  result.learning_rate = result.sweep[best].learning_rate;
  return result;
}

namespace {

using nlohmann::json;

json matrix_json(const Matrix& m) {
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"values", m.data()}};
}

Matrix matrix_from(const json& node) {
  Matrix m(node.at("rows").get<std::size_t>(), node.at("cols").get<std::size_t>());
  auto values = node.at("values").get<std::vector<double>>();
  if (values.size() != m.size()) throw DimensionError("matrix value count does not match shape");
  m.data() = std::move(values);
  return m;
}

}  // namespace

std::string serialize_model(const Model& model) {
  const FeatureSpec& f = model.features;
  json doc = {
      {"format", "ucreduce-model"},
      {"version", kModelFormatVersion},
      {"kind", to_string(model.kind)},
      {"targets", {{"generators", model.generators}, {"periods", model.periods}}},
      {"features",
       {{"buses", f.buses},
        {"periods", f.periods},
        {"scenarios", f.scenarios},
        {"kept", f.kept},
        {"dropped", f.dropped},
        {"min", f.min},
        {"max", f.max}}},
      {"config",
       {{"learning_rate", model.config.learning_rate},
        {"iterations", model.config.iterations},
        {"hidden", model.config.hidden},
        {"seed", model.config.seed}}},
      {"w1", matrix_json(model.w1)},
      {"b1", model.b1},
      {"w2", matrix_json(model.w2)},
      {"b2", model.b2},
      {"monotone", model.monotone},
      {"loss_curve", model.loss_curve},
  };
  return doc.dump(1) + "\n";
}

Model parse_model(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("model", e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != "ucreduce-model") {
      throw ValidationError("not a model file");
    }
    const int version = doc.at("version").get<int>();
    if (version != kModelFormatVersion) {
      throw ValidationError(fmt::format("model format version {} is not supported", version));
    }
    Model m;
    m.kind = parse_model_kind(doc.at("kind").get<std::string>());
    m.generators = doc.at("targets").at("generators").get<int>();
    m.periods = doc.at("targets").at("periods").get<int>();
    const json& f = doc.at("features");
    m.features.buses = f.at("buses").get<int>();
    m.features.periods = f.at("periods").get<int>();
    m.features.scenarios = f.at("scenarios").get<int>();
    m.features.kept = f.at("kept").get<std::vector<int>>();
    m.features.dropped = f.at("dropped").get<std::vector<int>>();
    m.features.min = f.at("min").get<std::vector<double>>();
    m.features.max = f.at("max").get<std::vector<double>>();
    const json& c = doc.at("config");
    m.config.learning_rate = c.at("learning_rate").get<double>();
    m.config.iterations = c.at("iterations").get<int>();
    m.config.hidden = c.at("hidden").get<int>();
    m.config.seed = c.at("seed").get<std::uint64_t>();
    m.w1 = matrix_from(doc.at("w1"));
    m.b1 = doc.at("b1").get<std::vector<double>>();
    m.w2 = matrix_from(doc.at("w2"));
    m.b2 = doc.at("b2").get<std::vector<double>>();
    m.monotone = doc.at("monotone").get<bool>();
    m.loss_curve = doc.at("loss_curve").get<std::vector<double>>();

    const auto F = static_cast<std::size_t>(m.features.size());
    const auto K = static_cast<std::size_t>(m.targets());
    const bool spec_ok = m.features.min.size() == F && m.features.max.size() == F;
    const bool mtlr_ok = m.kind == ModelKind::kMtlr && m.w1.rows() == K && m.w1.cols() == F &&
                         m.b1.size() == K && m.w2.empty() && m.b2.empty();
    const bool mlp_ok = m.kind == ModelKind::kMlp && m.w1.cols() == F &&
                        m.b1.size() == m.w1.rows() && m.w2.rows() == K &&
                        m.w2.cols() == m.w1.rows() && m.b2.size() == K;
    if (!spec_ok || !(mtlr_ok || mlp_ok)) {
      throw DimensionError("model parameter shapes are inconsistent");
    }
    return m;
  } catch (const json::exception& e) {
    throw ParseError("model", e.what());
  }
}

void save_model(const Model& model, const std::filesystem::path& path) {
  write_file(path, serialize_model(model));
}

Model load_model(const std::filesystem::path& path) { return parse_model(read_file(path)); }

std::string loss_curve_csv(const std::vector<double>& curve) {
  std::string out = "iteration,loss\n";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    out += fmt::format("{},{}\n", i, format_double(curve[i]));
  }
  return out;
}

}  // namespace ucr::ml
