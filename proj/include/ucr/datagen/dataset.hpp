// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ucr/core/grid.hpp"
#include "ucr/core/parallel.hpp"
#include "ucr/core/timing.hpp"
#include "ucr/grid/power_system.hpp"
#include "ucr/milp/problem.hpp"
#include "ucr/scuc/builder.hpp"
#include "ucr/scuc/schedule.hpp"

namespace ucr::datagen {

/// Random-stream ids passed to derive_seed(); one per consumer of the root seed.
namespace stream {
inline constexpr std::uint64_t kProfile = 1;
inline constexpr std::uint64_t kSplit = 2;
inline constexpr std::uint64_t kOutOfSample = 3;
inline constexpr std::uint64_t kTraining = 4;
}  // namespace stream

struct RandomConfig {
  double alpha_range = 0.10;  // system-wide scale, uniform on [-a, a]
  double beta_range = 0.04;   // per bus and period, uniform on [-b, b]
  std::uint64_t seed = 0;
  std::uint64_t stream = stream::kProfile;

  void validate() const;
  bool operator==(const RandomConfig&) const = default;
};

/// d(n,t) * (1 + beta(n,t)) * (1 + alpha), clamped at 0. Draw m always yields
/// the same profile for a given seed and stream. Only the demand is scaled;
/// renewable output stays as described by the system.
grid::LoadProfile perturb_profile(const grid::LoadProfile& base, const RandomConfig& config,
                                  std::uint64_t draw);

/// The deterministic part of perturb_profile with explicit factors.
grid::LoadProfile scale_profile(const grid::LoadProfile& base, double alpha,
                                const Matrix& beta);

struct Sample {
  long id = 0;
  std::uint64_t draw = 0;  // perturbation index that produced the demand
  Matrix demand;           // [bus x period]
  scuc::CommitmentSchedule schedule;
  double objective = 0.0;
  double solve_time = 0.0;  // seconds, or simplex iterations in work mode
  bool feasible = true;

  bool operator==(const Sample&) const = default;
};

struct Dataset {
  std::string system_name;
  std::string base_profile;  // where the base profile came from
  RandomConfig random;
  TimingMode timing = TimingMode::kWall;
  std::vector<Sample> samples;  // ordered by id
  std::vector<long> train_ids;
  std::vector<long> test_ids;
  long draws = 0;
  long discarded = 0;

  const Sample& sample(long id) const;
  std::vector<const Sample*> train() const;
  std::vector<const Sample*> test() const;
  bool operator==(const Dataset&) const = default;
};

struct GenerateOptions {
  long count = 100;
  RandomConfig random;
  scuc::ScucOptions scuc;
  milp::SolveOptions solver;
  double train_fraction = 0.8;
  Execution execution = Execution::kParallel;
  TimingMode timing = TimingMode::kWall;
  std::string base_profile;

  void validate() const;
};

/// Full SCUC solve of one demand matrix. Returns false when no feasible
/// commitment exists (or the solver stopped without one).
bool solve_sample(const grid::PowerSystem& system, const grid::LoadProfile& profile,
                  const scuc::ScucOptions& scuc, const milp::SolveOptions& solver,
                  TimingMode timing, Sample& out);

/// Draws perturbed profiles in order m = 0, 1, ..., keeps the first `count`
/// feasible ones, then shuffles ids and splits train/test. Throws
/// ValidationError if more than 10 * count consecutive draws are infeasible.
Dataset generate_dataset(const grid::PowerSystem& system, const grid::LoadProfile& base,
                         const GenerateOptions& options);

/// Seeded permutation split; |train| = round(fraction * |ids|).
void split_dataset(Dataset& dataset, double train_fraction, std::uint64_t seed);

inline constexpr int kDatasetSchemaVersion = 1;

/// Writes demands.csv, schedules.csv and manifest.json into `dir`.
void save_dataset(const Dataset& dataset, const grid::PowerSystem& system,
                  const std::filesystem::path& dir);
/// `initial` only serves to rebuild the implied start-ups.
Dataset load_dataset(const std::filesystem::path& dir, const grid::PowerSystem& system,
                     const scuc::InitialConditions& initial = {});

}  // namespace ucr::datagen
