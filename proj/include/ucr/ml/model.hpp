// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ucr/core/grid.hpp"
#include "ucr/core/parallel.hpp"
#include "ucr/ml/features.hpp"

namespace ucr::ml {

enum class ModelKind { kMtlr, kMlp };

std::string to_string(ModelKind kind);
ModelKind parse_model_kind(const std::string& text);

struct TrainConfig {
  double learning_rate = 0.001;
  int iterations = 1000;
  /// MLP hidden width; 0 selects twice the target count, capped at 256.
  int hidden = 0;
  std::uint64_t seed = 0;
  Execution execution = Execution::kParallel;

  void validate() const;
  bool operator==(const TrainConfig&) const = default;
};

/// Both model kinds share one container. MTLR: w1 is [target x feature], b1
/// one bias per target, w2/b2 empty. MLP: w1 [hidden x feature] with tanh,
/// w2 [target x hidden] with sigmoid outputs.
struct Model {
  ModelKind kind = ModelKind::kMtlr;
  FeatureSpec features;
  int generators = 0;
  int periods = 0;
  Matrix w1;
  std::vector<double> b1;
  Matrix w2;
  std::vector<double> b2;
  TrainConfig config;
  /// Loss before the first update, then after every update.
  std::vector<double> loss_curve;
  bool monotone = true;

  int targets() const { return generators * periods; }
  int hidden() const { return kind == ModelKind::kMlp ? static_cast<int>(w1.rows()) : 0; }
  int parameter_count() const;
  bool operator==(const Model&) const = default;
};

/// Zero-weight MTLR or seeded Glorot-uniform MLP for the given shapes.
Model initial_model(ModelKind kind, const FeatureSpec& features, int generators, int periods,
                    const TrainConfig& config);

/// Gradient with the same layout as the model's parameters.
struct Gradient {
  Matrix w1;
  std::vector<double> b1;
  Matrix w2;
  std::vector<double> b2;
};

/// Mean over samples of the cross-entropy summed over targets, on scaled
/// inputs. With `gradient` non-null also fills the exact gradient. The serial
/// and parallel paths perform identical arithmetic.
double evaluate(const Model& model, const Matrix& inputs, const BinaryMatrix& targets,
                Execution execution, Gradient* gradient = nullptr);

/// P(u = 1) per [sample x target] for scaled inputs.
Matrix probabilities(const Model& model, const Matrix& inputs, Execution execution);

/// Full-batch gradient descent for config.iterations steps. Each step moves
/// every parameter by learning_rate times the gradient summed over samples.
/// Throws DivergenceError if the loss stops being finite.
Model train(ModelKind kind, const TrainingData& data, const TrainConfig& config);

struct SweepEntry {
  double learning_rate = 0.0;
  bool diverged = false;
  bool monotone = false;
  double train_accuracy = 0.0;
  double final_loss = 0.0;
  std::vector<double> loss_curve;
};

struct TuneResult {
  Model model;  // trained at the selected rate
  double learning_rate = 0.0;
  std::vector<SweepEntry> sweep;
};

/// Trains once per rate and keeps the best train accuracy among runs whose
/// loss never increased (ties: lower final loss, then smaller rate). Throws
/// DivergenceError when no rate qualifies.
TuneResult tune(ModelKind kind, const TrainingData& data, const TrainConfig& base,
                const std::vector<double>& sweep);

inline constexpr int kModelFormatVersion = 1;

std::string serialize_model(const Model& model);
Model parse_model(const std::string& text);
void save_model(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

/// `iteration,loss` rows.
std::string loss_curve_csv(const std::vector<double>& curve);

}  // namespace ucr::ml
