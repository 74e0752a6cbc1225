// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ucr/milp/problem.hpp"
#include "ucr/pipeline/pipeline.hpp"

namespace ucr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // computation failed (e.g. every rate diverged)
inline constexpr int kExitUsage = 2;    // bad flags, config or input files

/// Effective configuration of one command. The JSON form nests the
/// command-specific fields under "generate", "train", "verify" and
/// "pipeline"/"solver".
struct RunConfig {
  std::string system;
  /// Base load profile; empty means load.csv next to the system file.
  std::string profile;
  std::string dataset;
  std::string model;  // model file read by verify
  std::string output;
  std::uint64_t seed = 0;
  int jobs = 0;  // 0 = OpenMP default, 1 = serial reference path
  std::string timing = "wall";
  bool stochastic = false;

  long samples = 100;
  double alpha = 0.10;
  double beta = 0.04;
  double train_fraction = 0.8;

  std::string model_kind = "mtlr";
  std::vector<double> sweep{0.001, 0.003, 0.01, 0.03, 0.05};
  int iterations = 1000;
  int hidden = 0;

  std::string mode = "in-sample";
  std::string fl = "on";
  long oos_samples = 100;
  double oos_alpha = 0.25;
  double oos_beta = 0.10;
  pipeline::PipelineConfig pipeline;

  double mip_gap = 1e-4;
  double time_limit = milp::kInfinity;
  std::string branching = "reliability";

  /// Dataset sample exported instead of the base profile; 0 = base profile.
  long sample = 0;

  bool operator==(const RunConfig&) const = default;
};

nlohmann::json to_json(const RunConfig& config);
/// Relative paths are resolved against `base_dir`. Unknown keys are
/// rejected with ValidationError.
RunConfig from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir);

/// Runs one subcommand (generate, train, verify, export); returns the exit
/// code. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace ucr::cli
