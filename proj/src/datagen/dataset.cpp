// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include "ucr/datagen/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "ucr/core/error.hpp"
#include "ucr/core/rng.hpp"
#include "ucr/core/text.hpp"
#include "ucr/milp/branch_and_bound.hpp"

namespace ucr::datagen {

using nlohmann::json;

void RandomConfig::validate() const {
  if (!(alpha_range >= 0.0 && alpha_range < 1.0)) {
    throw ValidationError(fmt::format("alpha range must lie in [0, 1), got {}", alpha_range));
  }
  if (!(beta_range >= 0.0 && beta_range < 1.0)) {
    throw ValidationError(fmt::format("beta range must lie in [0, 1), got {}", beta_range));
  }
}

grid::LoadProfile perturb_profile(const grid::LoadProfile& base, const RandomConfig& config,
                                  std::uint64_t draw) {
  config.validate();
  Rng rng(derive_seed(config.seed, config.stream, draw));
  const double alpha = rng.uniform(-config.alpha_range, config.alpha_range);
  Matrix beta(base.demand.rows(), base.demand.cols());
  for (double& b : beta.data()) b = rng.uniform(-config.beta_range, config.beta_range);
  return scale_profile(base, alpha, beta);
}

grid::LoadProfile scale_profile(const grid::LoadProfile& base, double alpha,
                                const Matrix& beta) {
  if (beta.rows() != base.demand.rows() || beta.cols() != base.demand.cols()) {
    throw DimensionError("beta must have the shape of the demand matrix");
  }
  grid::LoadProfile out = base;
  for (std::size_t n = 0; n < beta.rows(); ++n) {
    for (std::size_t t = 0; t < beta.cols(); ++t) {
      out.demand(n, t) = std::max(0.0, base.demand(n, t) * (1.0 + beta(n, t)) * (1.0 + alpha));
    }
  }
  return out;
}

const Sample& Dataset::sample(long id) const {
  auto it = std::lower_bound(samples.begin(), samples.end(), id,
                             [](const Sample& s, long v) { return s.id < v; });
  if (it == samples.end() || it->id != id) {
    throw ValidationError(fmt::format("dataset has no sample {}", id));
  }
  return *it;
}

std::vector<const Sample*> Dataset::train() const {
  std::vector<const Sample*> out;
  for (long id : train_ids) out.push_back(&sample(id));
  return out;
}

std::vector<const Sample*> Dataset::test() const {
  std::vector<const Sample*> out;
  for (long id : test_ids) out.push_back(&sample(id));
  return out;
}

void GenerateOptions::validate() const {
  if (count < 0) throw ValidationError("sample count must be non-negative");
  if (!(train_fraction >= 0.0 && train_fraction <= 1.0)) {
    throw ValidationError("train fraction must lie in [0, 1]");
  }
  random.validate();
  solver.validate();
}

bool solve_sample(const grid::PowerSystem& system, const grid::LoadProfile& profile,
                  const scuc::ScucOptions& scuc, const milp::SolveOptions& solver,
                  TimingMode timing, Sample& out) {
  const scuc::ScucModel model = scuc::build_scuc(system, profile, scuc);
  const milp::MilpSolution sol = milp::solve_milp(model.problem, solver);
  out.demand = profile.demand;
  out.solve_time = timing == TimingMode::kWork ? static_cast<double>(sol.lp_iterations)
                                               : sol.solve_time;
  if (sol.status != milp::SolveStatus::kOptimal &&
      sol.status != milp::SolveStatus::kFeasibleGapMet) {
    out.feasible = false;
    return false;
  }
  // Start-ups are stored implicitly; keep them minimal so a saved and reloaded
  // sample compares equal.
  out.schedule = scuc::CommitmentSchedule::from_states(
      scuc::extract_schedule(sol, model, solver.integrality_tolerance).schedule.on,
      scuc.initial);
  out.objective = sol.objective;
  out.feasible = true;
  return true;
}

void split_dataset(Dataset& dataset, double train_fraction, std::uint64_t seed) {
  std::vector<long> ids;
  for (const Sample& s : dataset.samples) ids.push_back(s.id);
  Rng rng(derive_seed(seed, stream::kSplit, 0));
  rng.shuffle(ids);
  const auto n_train = static_cast<std::size_t>(
      std::llround(train_fraction * static_cast<double>(ids.size())));
  dataset.train_ids.assign(ids.begin(), ids.begin() + n_train);
  dataset.test_ids.assign(ids.begin() + n_train, ids.end());
}

Dataset generate_dataset(const grid::PowerSystem& system, const grid::LoadProfile& base,
                         const GenerateOptions& options) {
  options.validate();
  grid::validate_profile(system, base);
  Dataset ds;
  ds.system_name = system.name();
  ds.base_profile = options.base_profile;
  ds.random = options.random;
  ds.timing = options.timing;

  const long limit = 10 * options.count;
  long consecutive = 0;
  std::uint64_t next = 0;
  // Draws are evaluated in batches; acceptance walks each batch in draw order,
  // so the result does not depend on how the batch was scheduled.
  const long batch = std::max<long>(4L * thread_count(), 8);
  while (static_cast<long>(ds.samples.size()) < options.count) {
    const long want = options.count - static_cast<long>(ds.samples.size());
    const long size = options.execution == Execution::kSerial ? 1 : std::min(batch, want + 2);
    std::vector<Sample> results(static_cast<std::size_t>(size));
    parallel_for(options.execution, results.size(), [&](std::size_t i) {
      Sample& s = results[i];
      s.draw = next + i;
      const grid::LoadProfile profile = perturb_profile(base, options.random, s.draw);
      solve_sample(system, profile, options.scuc, options.solver, options.timing, s);
    });
    next += static_cast<std::uint64_t>(size);
    for (Sample& s : results) {
      if (static_cast<long>(ds.samples.size()) == options.count) break;
      ++ds.draws;
      if (!s.feasible) {
        ++ds.discarded;
        if (++consecutive > limit) {
          throw ValidationError(fmt::format(
              "{} consecutive perturbed profiles were infeasible; widen the system "
              "or narrow the perturbation ranges",
              consecutive));
        }
        continue;
      }
      consecutive = 0;
      s.id = static_cast<long>(ds.samples.size()) + 1;
      ds.samples.push_back(std::move(s));
    }
  }
  split_dataset(ds, options.train_fraction, options.random.seed);
  return ds;
}

namespace {

std::string period_header(int periods) {
  std::string out;
  for (int t = 1; t <= periods; ++t) out += fmt::format(",t{}", t);
  return out;
}

json ids_json(const std::vector<long>& ids) { return json(ids); }

// Rows "sample_id,<entity id>,v1..vT" grouped by sample id.
struct CsvRow {
  long sample = 0;
  long entity = 0;
  std::vector<std::string> cells;
  std::string location;
};

std::vector<CsvRow> read_rows(const std::filesystem::path& path, const char* entity,
                              int periods) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  std::string line;
  std::vector<CsvRow> rows;
  const std::string name = path.filename().string();
  if (!std::getline(in, line)) throw ParseError(name, "empty file");
  const std::string expected = fmt::format("sample_id,{}{}", entity, period_header(periods));
  if (trim(line) != expected) {
    const auto cols = split(trim(line), ',');
    if (cols.size() != static_cast<std::size_t>(periods) + 2) {
      throw DimensionError(fmt::format("{}: header has {} period columns, system has {}",
                                       name, static_cast<long>(cols.size()) - 2, periods));
    }
    throw ParseError(name + ":1", "expected header '" + expected + "'");
  }
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto cells = split(trim(line), ',');
    CsvRow row;
    row.location = fmt::format("{}:{}", name, lineno);
    if (cells.size() < 2) throw ParseError(row.location, "truncated row");
    row.sample = parse_long(cells[0], row.location);
    row.location += fmt::format(" (sample {})", row.sample);
    if (cells.size() != static_cast<std::size_t>(periods) + 2) {
      throw ParseError(row.location, fmt::format("expected {} columns, got {}",
                                                 periods + 2, cells.size()));
    }
    row.entity = parse_long(cells[1], row.location);
    row.cells.assign(cells.begin() + 2, cells.end());
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

void save_dataset(const Dataset& dataset, const grid::PowerSystem& system,
                  const std::filesystem::path& dir) {
  const int T = system.horizon();
  std::string demands = "sample_id,bus" + period_header(T) + "\n";
  std::string schedules = "sample_id,gen" + period_header(T) + "\n";
  json samples = json::array();
  for (const Sample& s : dataset.samples) {
    if (s.demand.rows() != static_cast<std::size_t>(system.bus_count()) ||
        s.schedule.generators() != system.generator_count()) {
      throw DimensionError(fmt::format("sample {} does not match system '{}'", s.id,
                                       system.name()));
    }
    for (int n = 0; n < system.bus_count(); ++n) {
      demands += fmt::format("{},{}", s.id, system.bus(n).id);
      for (int t = 0; t < T; ++t) demands += "," + format_double(s.demand(n, t));
      demands += "\n";
    }
    for (int g = 0; g < system.generator_count(); ++g) {
      schedules += fmt::format("{},{}", s.id, system.generator(g).id);
      for (int t = 0; t < T; ++t) schedules += fmt::format(",{}", s.schedule.on(g, t));
      schedules += "\n";
    }
    samples.push_back({{"id", s.id},
                       {"draw", s.draw},
                       {"objective", s.objective},
                       {"solve_time", s.solve_time}});
  }
  json manifest = {
      {"schema_version", kDatasetSchemaVersion},
      {"system", dataset.system_name},
      {"base_profile", dataset.base_profile},
      {"seed", dataset.random.seed},
      {"stream", dataset.random.stream},
      {"alpha_range", dataset.random.alpha_range},
      {"beta_range", dataset.random.beta_range},
      {"distribution", "uniform"},
      {"timing", to_string(dataset.timing)},
      {"counts",
       {{"samples", dataset.samples.size()},
        {"train", dataset.train_ids.size()},
        {"test", dataset.test_ids.size()},
        {"draws", dataset.draws},
        {"discarded", dataset.discarded}}},
      {"train_ids", ids_json(dataset.train_ids)},
      {"test_ids", ids_json(dataset.test_ids)},
      {"samples", samples},
  };
  write_file(dir / "demands.csv", demands);
  write_file(dir / "schedules.csv", schedules);
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

Dataset load_dataset(const std::filesystem::path& dir, const grid::PowerSystem& system,
                     const scuc::InitialConditions& initial) {
  json manifest;
  try {
    manifest = json::parse(read_file(dir / "manifest.json"));
  } catch (const json::parse_error& e) {
    throw ParseError((dir / "manifest.json").string(), e.what());
  }
  const std::string where = (dir / "manifest.json").string();
  try {
    const int version = manifest.at("schema_version").get<int>();
    if (version != kDatasetSchemaVersion) {
      throw ValidationError(fmt::format("{}: schema version {} is not supported (expected {})",
                                        where, version, kDatasetSchemaVersion));
    }
    Dataset ds;
    ds.system_name = manifest.at("system").get<std::string>();
    ds.base_profile = manifest.at("base_profile").get<std::string>();
    ds.random.seed = manifest.at("seed").get<std::uint64_t>();
    ds.random.stream = manifest.at("stream").get<std::uint64_t>();
    ds.random.alpha_range = manifest.at("alpha_range").get<double>();
    ds.random.beta_range = manifest.at("beta_range").get<double>();
    ds.timing = parse_timing_mode(manifest.at("timing").get<std::string>());
    ds.draws = manifest.at("counts").at("draws").get<long>();
    ds.discarded = manifest.at("counts").at("discarded").get<long>();
    ds.train_ids = manifest.at("train_ids").get<std::vector<long>>();
    ds.test_ids = manifest.at("test_ids").get<std::vector<long>>();

    const auto N = static_cast<std::size_t>(system.bus_count());
    const auto G = static_cast<std::size_t>(system.generator_count());
    const auto T = static_cast<std::size_t>(system.horizon());
    std::map<long, Sample> by_id;
    for (const json& entry : manifest.at("samples")) {
      Sample s;
      s.id = entry.at("id").get<long>();
      s.draw = entry.at("draw").get<std::uint64_t>();
      s.objective = entry.at("objective").get<double>();
      s.solve_time = entry.at("solve_time").get<double>();
      s.demand = Matrix(N, T, -1.0);
      s.schedule.on = BinaryMatrix(G, T, 2);
      if (!by_id.emplace(s.id, std::move(s)).second) {
        throw ValidationError(fmt::format("{}: duplicate sample id {}", where, entry.at("id").get<long>()));
      }
    }

    auto lookup = [&](const CsvRow& row) -> Sample& {
      auto it = by_id.find(row.sample);
      if (it == by_id.end()) {
        throw ParseError(row.location, "sample id not listed in the manifest");
      }
      return it->second;
    };
    std::map<int, int> bus_index;
    for (int n = 0; n < system.bus_count(); ++n) bus_index[system.bus(n).id] = n;
    for (const CsvRow& row : read_rows(dir / "demands.csv", "bus", static_cast<int>(T))) {
      Sample& s = lookup(row);
      auto bus = bus_index.find(static_cast<int>(row.entity));
      if (bus == bus_index.end()) {
        throw DimensionError(fmt::format("{}: unknown bus {}", row.location, row.entity));
      }
      const int n = bus->second;
      for (std::size_t t = 0; t < T; ++t) {
        const double d = parse_double(row.cells[t], row.location);
        if (!(d >= 0.0) || !std::isfinite(d)) {
          throw ParseError(row.location, fmt::format("invalid demand '{}'", row.cells[t]));
        }
        s.demand(n, t) = d;
      }
    }
    std::map<int, int> gen_index;
    for (int g = 0; g < system.generator_count(); ++g) gen_index[system.generator(g).id] = g;
    for (const CsvRow& row : read_rows(dir / "schedules.csv", "gen", static_cast<int>(T))) {
      Sample& s = lookup(row);
      auto it = gen_index.find(static_cast<int>(row.entity));
      if (it == gen_index.end()) {
        throw DimensionError(fmt::format("{}: unknown generator {}", row.location, row.entity));
      }
      for (std::size_t t = 0; t < T; ++t) {
        const std::string cell = trim(row.cells[t]);
        if (cell != "0" && cell != "1") {
          throw ParseError(row.location, fmt::format("commitment cell must be 0 or 1, got '{}'", cell));
        }
        s.schedule.on(it->second, t) = cell == "1";
      }
    }
    for (auto& [id, s] : by_id) {
      const bool demand_complete =
          std::none_of(s.demand.data().begin(), s.demand.data().end(),
                       [](double d) { return d < 0.0; });
      const bool schedule_complete =
          std::none_of(s.schedule.on.data().begin(), s.schedule.on.data().end(),
                       [](std::uint8_t u) { return u > 1; });
      if (!demand_complete || !schedule_complete) {
        throw DimensionError(fmt::format(
            "sample {} is missing {} rows for system '{}' ({} buses, {} generators)", id,
            demand_complete ? "schedule" : "demand", system.name(), N, G));
      }
      s.schedule = scuc::CommitmentSchedule::from_states(std::move(s.schedule.on), initial);
      ds.samples.push_back(std::move(s));
    }
    for (long id : ds.train_ids) ds.sample(id);
    for (long id : ds.test_ids) ds.sample(id);
    return ds;
  } catch (const json::exception& e) {
    throw ParseError(where, e.what());
  }
}

}  // namespace ucr::datagen
