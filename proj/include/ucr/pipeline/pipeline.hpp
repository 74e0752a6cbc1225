// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ucr/core/grid.hpp"
#include "ucr/core/parallel.hpp"
#include "ucr/core/timing.hpp"
#include "ucr/datagen/dataset.hpp"
#include "ucr/fl/repair.hpp"
#include "ucr/grid/power_system.hpp"
#include "ucr/milp/problem.hpp"
#include "ucr/ml/model.hpp"
#include "ucr/scuc/builder.hpp"
#include "ucr/scuc/reduction.hpp"

namespace ucr::pipeline {

struct PipelineConfig {
  double decision_threshold = 0.5;
  /// A generator whose probability is at or beyond these in every period is
  /// fixed for the whole horizon.
  double always_on = 0.95;
  double always_off = 0.05;
  /// Per-period fixing thresholds for the remaining generators.
  double fix_on = 0.90;
  double fix_off = 0.10;
  bool use_fl = true;

  /// Requires decision <= fix_on <= always_on <= 1 and the mirror image on
  /// the OFF side.
  void validate() const;
  bool operator==(const PipelineConfig&) const = default;
};

struct Postprocessed {
  scuc::ReductionPlan plan;
  BinaryMatrix predicted;  // thresholded probabilities
  BinaryMatrix repaired;   // after the feasibility layer; equals `predicted` without it
  std::vector<std::uint8_t> whole_row;  // 1 where the generator was fixed for every period
  double fl_time = 0.0;
  int flips = 0;
};

/// Plan for one sample from its [generator x period] probabilities. With
/// config.use_fl: whole-row fixing, then feasibility repair of the other rows,
/// then per-period fixing where the probability is extreme and the repair
/// agreed with the prediction; every other entry stays free, warm-started at
/// the repaired value. Without it the per-period fixing uses the prediction
/// directly.
Postprocessed postprocess(const Matrix& probability, const grid::PowerSystem& system,
                          const PipelineConfig& config, const fl::BatchOptions& repair = {});
Postprocessed postprocess_no_fl(const Matrix& probability, const PipelineConfig& config);

struct ReducedOutcome {
  milp::SolveStatus status = milp::SolveStatus::kInfeasible;
  double objective = 0.0;
  double solve_time = 0.0;  // seconds or simplex iterations, FL time excluded
  int free_binaries = 0;
  int fixed = 0;
  bool feasible() const;
};

struct RunOptions {
  scuc::ScucOptions scuc;
  milp::SolveOptions solver;
  TimingMode timing = TimingMode::kWall;
  Execution execution = Execution::kParallel;
};

/// Solves the SCUC with the plan applied. A plan that contradicts the
/// model's own fixings is reported as infeasible.
ReducedOutcome verify_sample(const grid::PowerSystem& system, const grid::LoadProfile& profile,
                             const scuc::ReductionPlan& plan, const RunOptions& options);

struct SampleRecord {
  long sample_id = 0;
  double full_objective = 0.0;
  double full_time = 0.0;
  int full_free_binaries = 0;
  std::string full_status;
  double reduced_objective = 0.0;
  /// Includes fl_time.
  double reduced_time = 0.0;
  double fl_time = 0.0;
  int reduced_free_binaries = 0;
  int fixed = 0;
  int flips = 0;
  std::string status;

  bool reduced_feasible() const;
  bool full_feasible() const;
  bool operator==(const SampleRecord&) const = default;
};

struct Summary {
  long samples = 0;
  long infeasible = 0;
  /// Means over samples with both solves feasible, in percent of the full
  /// model.
  double bn_cost = 0.0;
  double bn_time = 0.0;
  double speedup = 0.0;
  double median_full_time = 0.0;
  double median_reduced_time = 0.0;
  double mean_fixed = 0.0;  // fixed commitment entries per sample
  long flips = 0;
  bool operator==(const Summary&) const = default;
};

Summary summarize(const std::vector<SampleRecord>& records);

struct VariantReport {
  bool use_fl = true;
  std::vector<SampleRecord> records;  // ordered by sample id
  Summary summary;

  std::string name(bool stochastic) const;
};

enum class FlMode { kOn, kOff, kBoth };
FlMode parse_fl_mode(const std::string& text);
std::string to_string(FlMode mode);

struct ExperimentOptions {
  PipelineConfig pipeline;
  FlMode fl = FlMode::kOn;
  RunOptions run;
};

struct ExperimentReport {
  std::string mode;  // in-sample, oos or stochastic
  ExperimentOptions options;
  std::vector<VariantReport> variants;  // with FL first when both ran
  /// Percent fewer infeasible reduced models with FL than without; present
  /// when both variants ran and the one without FL had any.
  std::optional<double> infeasible_reduction;

  const VariantReport* variant(bool use_fl) const;
};

/// Predicts, post-processes and verifies each sample against a fresh full
/// solve of the same demand.
ExperimentReport evaluate_samples(const grid::PowerSystem& system,
                                  const std::vector<const datagen::Sample*>& samples,
                                  const ml::Model& model, const ExperimentOptions& options);

/// evaluate_samples over the dataset's test split.
ExperimentReport run_experiment(const grid::PowerSystem& system, const datagen::Dataset& dataset,
                                const ml::Model& model, const ExperimentOptions& options);

struct OutOfSampleOptions {
  long count = 100;
  double alpha_range = 0.25;
  double beta_range = 0.10;
  std::uint64_t seed = 0;
};

/// Draws `count` feasible profiles at the wider ranges from their own random
/// stream and evaluates them with and without the feasibility layer.
ExperimentReport out_of_sample(const grid::PowerSystem& system, const grid::LoadProfile& base,
                               const ml::Model& model, const ExperimentOptions& options,
                               const OutOfSampleOptions& oos, datagen::Dataset* drawn = nullptr);

/// run_experiment on scenario-based models. Requires at least two scenarios
/// and a model trained on scenario net loads.
ExperimentReport run_stochastic_experiment(const grid::PowerSystem& system,
                                           const datagen::Dataset& dataset,
                                           const ml::Model& model, ExperimentOptions options);

/// Writes report[_fl|_nofl].csv, summary.json, plot_cost.csv and
/// plot_time.csv into `dir`.
void write_report(const ExperimentReport& report, const std::filesystem::path& dir);

std::string records_csv(const std::vector<SampleRecord>& records);
std::string summary_json(const ExperimentReport& report);

}  // namespace ucr::pipeline
