// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include "ucr/pipeline/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

#include "ucr/core/error.hpp"
#include "ucr/core/text.hpp"
#include "ucr/milp/branch_and_bound.hpp"
#include "ucr/ml/features.hpp"
#include "ucr/ml/metrics.hpp"

namespace ucr::pipeline {

using nlohmann::json;

void PipelineConfig::validate() const {
  const bool on_side = decision_threshold <= fix_on && fix_on <= always_on && always_on <= 1.0;
  const bool off_side = 0.0 <= always_off && always_off <= fix_off && fix_off < decision_threshold;
  if (!on_side || !off_side || !(decision_threshold > 0.0 && decision_threshold < 1.0)) {
    throw ValidationError(fmt::format(
        "thresholds must satisfy 0 <= always_off ({}) <= fix_off ({}) < decision ({}) <= "
        "fix_on ({}) <= always_on ({}) <= 1",
        always_off, fix_off, decision_threshold, fix_on, always_on));
  }
}

namespace {

struct Thresholded {
  BinaryMatrix predicted;
  std::vector<std::uint8_t> whole_row;  // 0 none, 1 always ON, 2 always OFF
};

Thresholded threshold(const Matrix& p, const PipelineConfig& config) {
  config.validate();
  Thresholded out;
  out.predicted = BinaryMatrix(p.rows(), p.cols());
  out.whole_row.assign(p.rows(), 0);
  for (std::size_t g = 0; g < p.rows(); ++g) {
    bool on = true;
    bool off = true;
    for (std::size_t t = 0; t < p.cols(); ++t) {
      out.predicted(g, t) = p(g, t) >= config.decision_threshold;
      on = on && p(g, t) >= config.always_on;
      off = off && p(g, t) <= config.always_off;
    }
    out.whole_row[g] = on ? 1 : off ? 2 : 0;
  }
  return out;
}

Postprocessed start_plan(const Thresholded& th) {
  Postprocessed out;
  const std::size_t G = th.predicted.rows();
  const std::size_t T = th.predicted.cols();
  out.predicted = th.predicted;
  out.repaired = th.predicted;
  out.plan.fixed = BinaryMatrix(G, T);
  out.plan.value = BinaryMatrix(G, T);
  out.whole_row.assign(G, 0);
  for (std::size_t g = 0; g < G; ++g) {
    if (th.whole_row[g] == 0) continue;
    out.whole_row[g] = 1;
    for (std::size_t t = 0; t < T; ++t) {
      out.plan.fixed(g, t) = 1;
      out.plan.value(g, t) = th.whole_row[g] == 1;
    }
  }
  return out;
}

bool extreme(double p, const PipelineConfig& config) {
  return p >= config.fix_on || p <= config.fix_off;
}

double measured(const milp::MilpSolution& sol, TimingMode timing) {
  return timing == TimingMode::kWork ? static_cast<double>(sol.lp_iterations) : sol.solve_time;
}

bool usable(milp::SolveStatus s) {
  return s == milp::SolveStatus::kOptimal || s == milp::SolveStatus::kFeasibleGapMet;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

Postprocessed postprocess(const Matrix& probability, const grid::PowerSystem& system,
                          const PipelineConfig& config, const fl::BatchOptions& repair) {
  if (!config.use_fl) return postprocess_no_fl(probability, config);
  const Thresholded th = threshold(probability, config);
  Postprocessed out = start_plan(th);
  // Whole-row entries are constant, so the skip rule leaves them alone.
  const auto repaired = fl::repair_batch({th.predicted}, system, repair);
  out.repaired = repaired[0].on;
  out.fl_time = repaired[0].solve_time;
  out.flips = repaired[0].flips();
  for (std::size_t g = 0; g < probability.rows(); ++g) {
    if (out.whole_row[g]) continue;
    for (std::size_t t = 0; t < probability.cols(); ++t) {
      const std::uint8_t mf = out.repaired(g, t);
      out.plan.value(g, t) = mf;
      out.plan.fixed(g, t) = extreme(probability(g, t), config) && mf == th.predicted(g, t);
    }
  }
  return out;
}

Postprocessed postprocess_no_fl(const Matrix& probability, const PipelineConfig& config) {
  const Thresholded th = threshold(probability, config);
  Postprocessed out = start_plan(th);
  for (std::size_t g = 0; g < probability.rows(); ++g) {
    if (out.whole_row[g]) continue;
    for (std::size_t t = 0; t < probability.cols(); ++t) {
      const double p = probability(g, t);
      out.plan.value(g, t) = th.predicted(g, t);
      out.plan.fixed(g, t) = extreme(p, config);
    }
  }
  return out;
}

bool ReducedOutcome::feasible() const { return usable(status); }

ReducedOutcome verify_sample(const grid::PowerSystem& system, const grid::LoadProfile& profile,
                             const scuc::ReductionPlan& plan, const RunOptions& options) {
  const scuc::ScucModel model = scuc::build_scuc(system, profile, options.scuc);
  ReducedOutcome out;
  out.fixed = plan.fixed_count();
  const auto& idx = model.index;
  if (static_cast<int>(plan.fixed.rows()) == idx.generators() &&
      static_cast<int>(plan.fixed.cols()) == idx.periods()) {
    for (int g = 0; g < idx.generators(); ++g) {
      for (int t = 0; t < idx.periods(); ++t) {
        const auto& v = model.problem.variables[idx.on(g, t)];
        if (plan.fixed(g, t) && (plan.value(g, t) < v.lower || plan.value(g, t) > v.upper)) {
          out.status = milp::SolveStatus::kInfeasible;
          return out;
        }
      }
    }
  }
  const scuc::ReducedModel reduced = scuc::apply_reduction(model, plan);
  milp::SolveOptions solver = options.solver;
  solver.warm_start = reduced.warm_start;
  const auto sol = milp::solve_milp(reduced.problem, solver);
  out.status = sol.status;
  out.free_binaries = reduced.problem.free_binary_count();
  out.solve_time = measured(sol, options.timing);
  if (usable(sol.status)) out.objective = sol.objective;
  return out;
}

bool SampleRecord::reduced_feasible() const {
  return status == milp::to_string(milp::SolveStatus::kOptimal) ||
         status == milp::to_string(milp::SolveStatus::kFeasibleGapMet);
}

bool SampleRecord::full_feasible() const {
  return full_status == milp::to_string(milp::SolveStatus::kOptimal) ||
         full_status == milp::to_string(milp::SolveStatus::kFeasibleGapMet);
}

Summary summarize(const std::vector<SampleRecord>& records) {
  Summary s;
  s.samples = static_cast<long>(records.size());
  std::vector<double> full_times;
  std::vector<double> reduced_times;
  double cost = 0.0;
  double time = 0.0;
  long paired = 0;
  long timed = 0;
  double fixed = 0.0;
  for (const auto& r : records) {
    full_times.push_back(r.full_time);
    reduced_times.push_back(r.reduced_time);
    fixed += r.fixed;
    s.flips += r.flips;
    if (!r.reduced_feasible()) {
      ++s.infeasible;
      continue;
    }
    if (!r.full_feasible()) continue;
    ++paired;
    cost += r.reduced_objective / r.full_objective;
    if (r.full_time > 0.0) {
      ++timed;
      time += r.reduced_time / r.full_time;
    }
  }
  if (paired > 0) s.bn_cost = 100.0 * cost / static_cast<double>(paired);
  if (timed > 0) s.bn_time = 100.0 * time / static_cast<double>(timed);
  if (s.bn_time > 0.0) s.speedup = 100.0 / s.bn_time;
  s.median_full_time = median(full_times);
  s.median_reduced_time = median(reduced_times);
  if (!records.empty()) s.mean_fixed = fixed / static_cast<double>(records.size());
  return s;
}

std::string VariantReport::name(bool stochastic) const {
  return fmt::format("{}{}", stochastic ? "reduced_stochastic" : "reduced", use_fl ? "_fl" : "");
}

FlMode parse_fl_mode(const std::string& text) {
  if (text == "on") return FlMode::kOn;
  if (text == "off") return FlMode::kOff;
  if (text == "both") return FlMode::kBoth;
  throw ValidationError(fmt::format("unknown feasibility-layer mode '{}' (on, off, both)", text));
}

std::string to_string(FlMode mode) {
  switch (mode) {
    case FlMode::kOn: return "on";
    case FlMode::kOff: return "off";
    case FlMode::kBoth: return "both";
  }
  return "on";
}

const VariantReport* ExperimentReport::variant(bool use_fl) const {
  for (const auto& v : variants) {
    if (v.use_fl == use_fl) return &v;
  }
  return nullptr;
}

ExperimentReport evaluate_samples(const grid::PowerSystem& system,
                                  const std::vector<const datagen::Sample*>& samples,
                                  const ml::Model& model, const ExperimentOptions& options) {
  options.pipeline.validate();
  options.run.solver.validate();
  const bool stochastic = options.run.scuc.stochastic;
  std::vector<bool> variants;
  if (options.fl != FlMode::kOff) variants.push_back(true);
  if (options.fl != FlMode::kOn) variants.push_back(false);

  Matrix raw(samples.size(), static_cast<std::size_t>(model.features.raw_size()));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto x = ml::raw_features(system, samples[i]->demand, stochastic);
    if (x.size() != raw.cols()) {
      throw DimensionError(fmt::format("model expects {} raw features, sample {} has {}",
                                       raw.cols(), samples[i]->id, x.size()));
    }
    std::copy(x.begin(), x.end(), raw.row(i).begin());
  }
  const ml::PredictionSet predictions = ml::predict(model, raw, options.run.execution);

  ExperimentReport report;
  report.mode = stochastic ? "stochastic" : "in-sample";
  report.options = options;
  std::vector<std::vector<SampleRecord>> records(
      variants.size(), std::vector<SampleRecord>(samples.size()));

  fl::BatchOptions repair;
  repair.timing = options.run.timing;
  repair.execution = Execution::kSerial;
  repair.initial_state = options.run.scuc.initial.state;

  parallel_for(options.run.execution, samples.size(), [&](std::size_t i) {
    const datagen::Sample& sample = *samples[i];
    grid::LoadProfile profile{sample.demand, {}};
    const scuc::ScucModel full = scuc::build_scuc(system, profile, options.run.scuc);
    const auto full_sol = milp::solve_milp(full.problem, options.run.solver);
    const Matrix p = predictions.sample_probabilities(i);
    for (std::size_t v = 0; v < variants.size(); ++v) {
      PipelineConfig config = options.pipeline;
      config.use_fl = variants[v];
      const Postprocessed post = postprocess(p, system, config, repair);
      const ReducedOutcome red = verify_sample(system, profile, post.plan, options.run);
      SampleRecord& r = records[v][i];
      r.sample_id = sample.id;
      r.full_status = milp::to_string(full_sol.status);
      r.full_objective = usable(full_sol.status) ? full_sol.objective : 0.0;
      r.full_time = measured(full_sol, options.run.timing);
      r.full_free_binaries = full.problem.free_binary_count();
      r.status = milp::to_string(red.status);
      r.reduced_objective = red.objective;
      r.fl_time = config.use_fl ? post.fl_time : 0.0;
      r.reduced_time = red.solve_time + r.fl_time;
      r.reduced_free_binaries = red.free_binaries;
      r.fixed = red.fixed;
      r.flips = post.flips;
    }
  });

  for (std::size_t v = 0; v < variants.size(); ++v) {
    VariantReport vr;
    vr.use_fl = variants[v];
    vr.records = std::move(records[v]);
    std::sort(vr.records.begin(), vr.records.end(),
              [](const SampleRecord& a, const SampleRecord& b) { return a.sample_id < b.sample_id; });
    vr.summary = summarize(vr.records);
    report.variants.push_back(std::move(vr));
  }
  if (report.variants.size() == 2 && report.variants[1].summary.infeasible > 0) {
    const long with = report.variants[0].summary.infeasible;
    const long without = report.variants[1].summary.infeasible;
    report.infeasible_reduction =
        100.0 * static_cast<double>(without - with) / static_cast<double>(without);
  }
  return report;
}

ExperimentReport run_experiment(const grid::PowerSystem& system, const datagen::Dataset& dataset,
                                const ml::Model& model, const ExperimentOptions& options) {
  return evaluate_samples(system, dataset.test(), model, options);
}

ExperimentReport out_of_sample(const grid::PowerSystem& system, const grid::LoadProfile& base,
                               const ml::Model& model, const ExperimentOptions& options,
                               const OutOfSampleOptions& oos, datagen::Dataset* drawn) {
  datagen::GenerateOptions gen;
  gen.count = oos.count;
  gen.random.alpha_range = oos.alpha_range;
  gen.random.beta_range = oos.beta_range;
  gen.random.seed = oos.seed;
  gen.random.stream = datagen::stream::kOutOfSample;
  gen.scuc = options.run.scuc;
  gen.solver = options.run.solver;
  gen.train_fraction = 0.0;
  gen.execution = options.run.execution;
  gen.timing = options.run.timing;
  datagen::Dataset ds = datagen::generate_dataset(system, base, gen);
  ExperimentOptions both = options;
  both.fl = FlMode::kBoth;
  ExperimentReport report = evaluate_samples(system, ds.test(), model, both);
  report.mode = "oos";
  if (drawn) *drawn = std::move(ds);
  return report;
}

ExperimentReport run_stochastic_experiment(const grid::PowerSystem& system,
                                           const datagen::Dataset& dataset,
                                           const ml::Model& model, ExperimentOptions options) {
  if (system.scenario_count() < 2) {
    throw ValidationError(fmt::format("system '{}' has {} scenario(s); at least 2 are needed",
                                      system.name(), system.scenario_count()));
  }
  if (model.features.scenarios != system.scenario_count()) {
    throw DimensionError(fmt::format("model was trained on {} scenario(s), system has {}",
                                     model.features.scenarios, system.scenario_count()));
  }
  options.run.scuc.stochastic = true;
  return evaluate_samples(system, dataset.test(), model, options);
}

std::string records_csv(const std::vector<SampleRecord>& records) {
  std::string out = "sample_id,full_obj,full_time,red_obj,red_time,fl_time,status\n";
  for (const auto& r : records) {
    out += fmt::format("{},{},{},{},{},{},{}\n", r.sample_id, format_double(r.full_objective),
                       format_double(r.full_time),
                       r.reduced_feasible() ? format_double(r.reduced_objective) : "",
                       format_double(r.reduced_time), format_double(r.fl_time), r.status);
  }
  return out;
}

std::string summary_json(const ExperimentReport& report) {
  const bool stochastic = report.options.run.scuc.stochastic;
  const auto& pc = report.options.pipeline;
  json doc;
  doc["mode"] = report.mode;
  doc["config"] = {
      {"decision_threshold", pc.decision_threshold},
      {"always_on", pc.always_on},
      {"always_off", pc.always_off},
      {"fix_on", pc.fix_on},
      {"fix_off", pc.fix_off},
      {"fl", to_string(report.options.fl)},
      {"stochastic", stochastic},
      {"timing", to_string(report.options.run.timing)},
      {"mip_gap", report.options.run.solver.mip_gap},
  };
  json variants = json::array();
  for (const auto& v : report.variants) {
    const Summary& s = v.summary;
    variants.push_back({
        {"name", v.name(stochastic)},
        {"feasibility_layer", v.use_fl},
        {"report", v.use_fl ? "report_fl.csv" : "report_nofl.csv"},
        {"samples", s.samples},
        {"infeasible", s.infeasible},
        {"bn_cost_percent", s.bn_cost},
        {"bn_time_percent", s.bn_time},
        {"speedup", s.speedup},
        {"median_full_time", s.median_full_time},
        {"median_reduced_time", s.median_reduced_time},
        {"mean_fixed", s.mean_fixed},
        {"flips", s.flips},
    });
  }
  doc["variants"] = variants;
  if (report.infeasible_reduction) {
    doc["infeasible_reduction_percent"] = *report.infeasible_reduction;
  }
  return doc.dump(2) + "\n";
}

void write_report(const ExperimentReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const bool stochastic = report.options.run.scuc.stochastic;
  std::string cost = "variant,full,reduced\n";
  std::string time = "variant,full,reduced,speedup\n";
  for (const auto& v : report.variants) {
    write_file(dir / (v.use_fl ? "report_fl.csv" : "report_nofl.csv"), records_csv(v.records));
    cost += fmt::format("{},100,{}\n", v.name(stochastic), format_double(v.summary.bn_cost));
    time += fmt::format("{},100,{},{}\n", v.name(stochastic), format_double(v.summary.bn_time),
                        format_double(v.summary.speedup));
  }
  write_file(dir / "summary.json", summary_json(report));
  write_file(dir / "plot_cost.csv", cost);
  write_file(dir / "plot_time.csv", time);
}

}  // namespace ucr::pipeline
