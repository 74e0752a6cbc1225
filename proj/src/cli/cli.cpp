// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include "ucr/cli/cli.hpp"

#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <set>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ucr/core/error.hpp"
#include "ucr/core/parallel.hpp"
#include "ucr/core/text.hpp"
#include "ucr/datagen/dataset.hpp"
#include "ucr/grid/io.hpp"
#include "ucr/milp/mps.hpp"
#include "ucr/ml/features.hpp"
#include "ucr/ml/metrics.hpp"
#include "ucr/ml/model.hpp"
#include "ucr/scuc/builder.hpp"

namespace ucr::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "0.1.0";

// ---------------------------------------------------------------------------
// config file

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ValidationError(fmt::format("config: '{}' must be an object", where));
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw ValidationError(fmt::format("config: unknown key '{}{}'", where.empty() ? "" : where + ".",
                                        key));
    }
  }
}

template <class T>
void read(const json& obj, const char* key, T& dst, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    dst = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(fmt::format("config: '{}{}' has the wrong type",
                                      where.empty() ? "" : where + ".", key));
  }
}

void read_path(const json& obj, const char* key, std::string& dst, const fs::path& base) {
  std::string value;
  read(obj, key, value, "");
  if (value.empty()) return;
  const fs::path p(value);
  dst = p.is_absolute() ? p.string() : (base / p).lexically_normal().string();
}

// ---------------------------------------------------------------------------
// shared helpers

grid::PowerSystem need_system(const RunConfig& c) {
  if (c.system.empty()) throw ValidationError("a system file is required (--system)");
  return grid::load_system(c.system);
}

fs::path profile_path(const RunConfig& c) {
  if (!c.profile.empty()) return c.profile;
  return fs::path(c.system).parent_path() / "load.csv";
}

const std::string& need(const std::string& value, const char* flag) {
  if (value.empty()) throw ValidationError(fmt::format("{} is required", flag));
  return value;
}

Execution execution(const RunConfig& c) {
  if (c.jobs < 0) throw ValidationError("--jobs must be >= 0");
  if (c.jobs > 0) set_thread_count(c.jobs);
  return c.jobs == 1 ? Execution::kSerial : Execution::kParallel;
}

milp::SolveOptions solver_options(const RunConfig& c) {
  milp::SolveOptions s;
  s.mip_gap = c.mip_gap;
  s.time_limit = c.time_limit;
  if (c.branching == "reliability") {
    s.branching = milp::BranchRule::kReliability;
  } else if (c.branching == "most-fractional") {
    s.branching = milp::BranchRule::kMostFractional;
  } else {
    throw ValidationError(
        fmt::format("unknown branching rule '{}' (reliability, most-fractional)", c.branching));
  }
  s.validate();
  return s;
}

void write_manifest(const fs::path& dir, const std::string& command, const RunConfig& c) {
  json doc;
  doc["command"] = command;
  doc["version"] = kVersion;
  doc["config"] = to_json(c);
  fs::create_directories(dir);
  write_file(dir / fmt::format("run_{}.json", command), doc.dump(2) + "\n");
}

json nullable(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// ---------------------------------------------------------------------------
// commands

void cmd_generate(const RunConfig& c, std::ostream& out) {
  const auto system = need_system(c);
  const auto base_path = profile_path(c);
  const auto base = grid::load_profile(base_path, system);
  datagen::GenerateOptions g;
  g.count = c.samples;
  g.random.alpha_range = c.alpha;
  g.random.beta_range = c.beta;
  g.random.seed = c.seed;
  g.scuc.stochastic = c.stochastic;
  g.solver = solver_options(c);
  g.train_fraction = c.train_fraction;
  g.execution = execution(c);
  g.timing = parse_timing_mode(c.timing);
  g.base_profile = base_path.filename().string();
  const fs::path dir = c.dataset.empty() ? need(c.output, "--dataset") : c.dataset;
  const auto ds = datagen::generate_dataset(system, base, g);
  datagen::save_dataset(ds, system, dir);
  write_manifest(dir, "generate", c);
  out << fmt::format("generated {} feasible samples from {} draws ({} discarded); {} train, {} test\n",
                     ds.samples.size(), ds.draws, ds.discarded, ds.train_ids.size(),
                     ds.test_ids.size());
  out << fmt::format("wrote {}\n", dir.string());
}

std::string predictions_csv(const ml::PredictionSet& p, const std::vector<const datagen::Sample*>& s) {
  std::string text = "sample_id,gen";
  for (int t = 1; t <= p.periods; ++t) text += fmt::format(",t{}", t);
  text += "\n";
  for (std::size_t i = 0; i < p.samples(); ++i) {
    for (int g = 0; g < p.generators; ++g) {
      text += fmt::format("{},{}", s[i]->id, g + 1);
      for (int t = 0; t < p.periods; ++t) text += "," + format_double(p.at(i, g, t));
      text += "\n";
    }
  }
  return text;
}

int cmd_train(const RunConfig& c, std::ostream& out) {
  const auto system = need_system(c);
  const auto ds = datagen::load_dataset(need(c.dataset, "--dataset"), system);
  const fs::path dir = need(c.output, "--out");
  const auto kind = ml::parse_model_kind(c.model_kind);
  const auto train_data = ml::make_training_data(system, ds.train(), c.stochastic);
  ml::TrainConfig base;
  base.iterations = c.iterations;
  base.hidden = c.hidden;
  base.seed = c.seed;
  base.execution = execution(c);
  const auto result = ml::tune(kind, train_data, base, c.sweep);
  const ml::Model& model = result.model;

  fs::create_directories(dir);
  ml::save_model(model, dir / "model.json");
  write_file(dir / "loss_curve.csv", ml::loss_curve_csv(model.loss_curve));
  std::string sweep_csv = "learning_rate,iteration,loss\n";
  json sweep = json::array();
  double train_accuracy = 0.0;
  for (const auto& e : result.sweep) {
    for (std::size_t i = 0; i < e.loss_curve.size(); ++i) {
      sweep_csv += fmt::format("{},{},{}\n", format_double(e.learning_rate), i,
                               format_double(e.loss_curve[i]));
    }
    sweep.push_back({{"learning_rate", e.learning_rate},
                     {"diverged", e.diverged},
                     {"monotone", e.monotone},
                     {"train_accuracy", e.train_accuracy},
                     {"final_loss", nullable(e.final_loss)}});
    if (e.learning_rate == result.learning_rate) train_accuracy = e.train_accuracy;
  }
  write_file(dir / "sweep.csv", sweep_csv);

  const auto test_samples = ds.test();
  json metrics;
  metrics["model"] = ml::to_string(kind);
  metrics["learning_rate"] = result.learning_rate;
  metrics["iterations"] = c.iterations;
  metrics["hidden"] = model.hidden();
  metrics["features"] = model.features.size();
  metrics["dropped_features"] = model.features.dropped.size();
  metrics["train_samples"] = train_data.inputs.rows();
  metrics["test_samples"] = test_samples.size();
  metrics["train_accuracy"] = train_accuracy;
  metrics["sweep"] = sweep;
  std::string test_line = "no test samples";
  if (!test_samples.empty()) {
    const auto test_data = ml::make_training_data(system, test_samples, c.stochastic);
    const auto pred = ml::predict(model, test_data.inputs, base.execution);
    const auto labels = pred.labels();
    const double acc = ml::accuracy(labels, test_data.targets);
    const auto cm = ml::confusion(labels, test_data.targets);
    metrics["test_accuracy"] = acc;
    metrics["confusion"] = {{"true_positive", cm.true_positive},
                            {"true_negative", cm.true_negative},
                            {"false_positive", cm.false_positive},
                            {"false_negative", cm.false_negative}};
    write_file(dir / "predictions_test.csv", predictions_csv(pred, test_samples));
    test_line = fmt::format("test accuracy {:.4f}", acc);
  }
  write_file(dir / "metrics.json", metrics.dump(2) + "\n");
  write_manifest(dir, "train", c);
  out << fmt::format("{}: learning rate {} selected from {} candidates; train accuracy {:.4f}, {}\n",
                     ml::to_string(kind), format_double(result.learning_rate), result.sweep.size(),
                     train_accuracy, test_line);
  out << fmt::format("wrote {}\n", dir.string());
  return kExitOk;
}

void cmd_verify(const RunConfig& c, std::ostream& out) {
  const auto system = need_system(c);
  const auto model = ml::load_model(need(c.model, "--model"));
  const fs::path dir = need(c.output, "--out");
  pipeline::ExperimentOptions opt;
  opt.pipeline = c.pipeline;
  opt.fl = pipeline::parse_fl_mode(c.fl);
  opt.run.scuc.stochastic = c.stochastic;
  opt.run.solver = solver_options(c);
  opt.run.timing = parse_timing_mode(c.timing);
  opt.run.execution = execution(c);
  pipeline::ExperimentReport report;
  if (c.mode == "in-sample") {
    const auto ds = datagen::load_dataset(need(c.dataset, "--dataset"), system);
    report = pipeline::run_experiment(system, ds, model, opt);
  } else if (c.mode == "stochastic") {
    const auto ds = datagen::load_dataset(need(c.dataset, "--dataset"), system);
    report = pipeline::run_stochastic_experiment(system, ds, model, opt);
  } else if (c.mode == "oos") {
    const auto base = grid::load_profile(profile_path(c), system);
    pipeline::OutOfSampleOptions oos;
    oos.count = c.oos_samples;
    oos.alpha_range = c.oos_alpha;
    oos.beta_range = c.oos_beta;
    oos.seed = c.seed;
    report = pipeline::out_of_sample(system, base, model, opt, oos);
  } else {
    throw ValidationError(fmt::format("unknown mode '{}' (in-sample, oos, stochastic)", c.mode));
  }
  pipeline::write_report(report, dir);
  write_manifest(dir, "verify", c);
  for (const auto& v : report.variants) {
    const auto& s = v.summary;
    out << fmt::format("{}: {} samples, {} infeasible, cost {:.3f}% of full, time {:.1f}% ({:.2f}x)\n",
                       v.name(opt.run.scuc.stochastic), s.samples, s.infeasible, s.bn_cost,
                       s.bn_time, s.speedup);
  }
  if (report.infeasible_reduction) {
    out << fmt::format("feasibility layer removed {:.1f}% of infeasible reduced models\n",
                       *report.infeasible_reduction);
  }
  out << fmt::format("wrote {}\n", dir.string());
}

void cmd_export(const RunConfig& c, std::ostream& out) {
  const auto system = need_system(c);
  const fs::path dir = need(c.output, "--out");
  grid::LoadProfile profile;
  if (c.sample > 0) {
    const auto ds = datagen::load_dataset(need(c.dataset, "--dataset"), system);
    profile.demand = ds.sample(c.sample).demand;
  } else {
    profile = grid::load_profile(profile_path(c), system);
  }
  scuc::ScucOptions options;
  options.stochastic = c.stochastic;
  const auto model = scuc::build_scuc(system, profile, options);
  fs::create_directories(dir);
  milp::export_mps(model.problem, dir / "scuc.mps");
  write_manifest(dir, "export", c);
  out << fmt::format("{} rows, {} columns ({} binary) -> {}\n", model.problem.constraint_count(),
                     model.problem.variable_count(), model.problem.binary_count(),
                     (dir / "scuc.mps").string());
}

// ---------------------------------------------------------------------------
// flag plumbing: each flag overrides the config only when given

using Overrides = std::vector<std::function<void(RunConfig&)>>;

template <class T, class Set>
CLI::Option* option(CLI::App* app, Overrides& ov, const std::string& name, const std::string& help,
                    Set set) {
  auto value = std::make_shared<T>();
  CLI::Option* opt = app->add_option(name, *value, help);
  ov.push_back([opt, value, set](RunConfig& c) {
    if (opt->count() > 0) set(c, *value);
  });
  return opt;
}

void common_flags(CLI::App* app, Overrides& ov, std::string& config_path) {
  app->add_option("--config", config_path, "JSON config file; flags override its values");
  option<std::string>(app, ov, "--system", "system file (JSON)",
                      [](RunConfig& c, const std::string& v) { c.system = v; });
  option<std::string>(app, ov, "--profile", "base load profile CSV (default: load.csv beside the system)",
                      [](RunConfig& c, const std::string& v) { c.profile = v; });
  option<std::string>(app, ov, "--dataset", "dataset directory",
                      [](RunConfig& c, const std::string& v) { c.dataset = v; });
  option<std::string>(app, ov, "--out", "output directory",
                      [](RunConfig& c, const std::string& v) { c.output = v; });
  option<std::uint64_t>(app, ov, "--seed", "root random seed",
                        [](RunConfig& c, std::uint64_t v) { c.seed = v; });
  option<int>(app, ov, "--jobs", "worker threads; 1 runs the serial reference path",
              [](RunConfig& c, int v) { c.jobs = v; });
  option<std::string>(app, ov, "--timing", "wall or work (simplex iterations)",
                      [](RunConfig& c, const std::string& v) { c.timing = v; })
      ->check(CLI::IsMember({"wall", "work"}));
  option<double>(app, ov, "--mip-gap", "relative MILP gap",
                 [](RunConfig& c, double v) { c.mip_gap = v; });
  option<double>(app, ov, "--time-limit", "seconds per MILP solve",
                 [](RunConfig& c, double v) { c.time_limit = v; });
  option<std::string>(app, ov, "--branching", "reliability or most-fractional",
                      [](RunConfig& c, const std::string& v) { c.branching = v; });
  auto stochastic = std::make_shared<bool>(false);
  CLI::Option* flag = app->add_flag("--stochastic", *stochastic, "use every renewable scenario");
  ov.push_back([flag, stochastic](RunConfig& c) {
    if (flag->count() > 0) c.stochastic = *stochastic;
  });
}

}  // namespace

json to_json(const RunConfig& c) {
  const auto& p = c.pipeline;
  return {
      {"system", c.system},
      {"profile", c.profile},
      {"dataset", c.dataset},
      {"model", c.model},
      {"output", c.output},
      {"seed", c.seed},
      {"jobs", c.jobs},
      {"timing", c.timing},
      {"stochastic", c.stochastic},
      {"generate",
       {{"samples", c.samples},
        {"alpha", c.alpha},
        {"beta", c.beta},
        {"train_fraction", c.train_fraction}}},
      {"train",
       {{"model", c.model_kind},
        {"sweep", c.sweep},
        {"iterations", c.iterations},
        {"hidden", c.hidden}}},
      {"verify",
       {{"mode", c.mode},
        {"fl", c.fl},
        {"samples", c.oos_samples},
        {"alpha", c.oos_alpha},
        {"beta", c.oos_beta}}},
      {"pipeline",
       {{"decision_threshold", p.decision_threshold},
        {"always_on", p.always_on},
        {"always_off", p.always_off},
        {"fix_on", p.fix_on},
        {"fix_off", p.fix_off}}},
      {"solver",
       {{"mip_gap", c.mip_gap},
        {"time_limit", nullable(c.time_limit)},
        {"branching", c.branching}}},
      {"export", {{"sample", c.sample}}},
  };
}

RunConfig from_json(const json& doc, const fs::path& base) {
  RunConfig c;
  check_keys(doc,
             {"system", "profile", "dataset", "model", "output", "seed", "jobs", "timing",
              "stochastic", "generate", "train", "verify", "pipeline", "solver", "export"},
             "");
  read_path(doc, "system", c.system, base);
  read_path(doc, "profile", c.profile, base);
  read_path(doc, "dataset", c.dataset, base);
  read_path(doc, "model", c.model, base);
  read_path(doc, "output", c.output, base);
  read(doc, "seed", c.seed, "");
  read(doc, "jobs", c.jobs, "");
  read(doc, "timing", c.timing, "");
  read(doc, "stochastic", c.stochastic, "");
  if (doc.contains("generate")) {
    const auto& g = doc.at("generate");
    check_keys(g, {"samples", "alpha", "beta", "train_fraction"}, "generate");
    read(g, "samples", c.samples, "generate");
    read(g, "alpha", c.alpha, "generate");
    read(g, "beta", c.beta, "generate");
    read(g, "train_fraction", c.train_fraction, "generate");
  }
  if (doc.contains("train")) {
    const auto& t = doc.at("train");
    check_keys(t, {"model", "sweep", "iterations", "hidden"}, "train");
    read(t, "model", c.model_kind, "train");
    read(t, "sweep", c.sweep, "train");
    read(t, "iterations", c.iterations, "train");
    read(t, "hidden", c.hidden, "train");
  }
  if (doc.contains("verify")) {
    const auto& v = doc.at("verify");
    check_keys(v, {"mode", "fl", "samples", "alpha", "beta"}, "verify");
    read(v, "mode", c.mode, "verify");
    read(v, "fl", c.fl, "verify");
    read(v, "samples", c.oos_samples, "verify");
    read(v, "alpha", c.oos_alpha, "verify");
    read(v, "beta", c.oos_beta, "verify");
  }
  if (doc.contains("pipeline")) {
    const auto& p = doc.at("pipeline");
    check_keys(p, {"decision_threshold", "always_on", "always_off", "fix_on", "fix_off"},
               "pipeline");
    read(p, "decision_threshold", c.pipeline.decision_threshold, "pipeline");
    read(p, "always_on", c.pipeline.always_on, "pipeline");
    read(p, "always_off", c.pipeline.always_off, "pipeline");
    read(p, "fix_on", c.pipeline.fix_on, "pipeline");
    read(p, "fix_off", c.pipeline.fix_off, "pipeline");
  }
  if (doc.contains("solver")) {
    const auto& s = doc.at("solver");
    check_keys(s, {"mip_gap", "time_limit", "branching"}, "solver");
    read(s, "mip_gap", c.mip_gap, "solver");
    if (s.contains("time_limit") && !s.at("time_limit").is_null()) {
      read(s, "time_limit", c.time_limit, "solver");
    }
    read(s, "branching", c.branching, "solver");
  }
  if (doc.contains("export")) {
    const auto& e = doc.at("export");
    check_keys(e, {"sample"}, "export");
    read(e, "sample", c.sample, "export");
  }
  return c;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Unit commitment with learned variable reduction", "ucr"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string config_path;
  Overrides ov;

  auto* gen = app.add_subcommand("generate", "solve perturbed demand profiles into a dataset");
  common_flags(gen, ov, config_path);
  option<long>(gen, ov, "--samples", "feasible samples to keep",
               [](RunConfig& c, long v) { c.samples = v; });
  option<double>(gen, ov, "--alpha", "system-wide scaling range",
                 [](RunConfig& c, double v) { c.alpha = v; });
  option<double>(gen, ov, "--beta", "per bus and period scaling range",
                 [](RunConfig& c, double v) { c.beta = v; });
  option<double>(gen, ov, "--train-fraction", "share of samples in the training split",
                 [](RunConfig& c, double v) { c.train_fraction = v; });

  auto* train = app.add_subcommand("train", "fit a commitment predictor on a dataset");
  common_flags(train, ov, config_path);
  option<std::string>(train, ov, "--model", "mtlr or mlp",
                      [](RunConfig& c, const std::string& v) { c.model_kind = v; })
      ->check(CLI::IsMember({"mtlr", "mlp"}));
  option<std::vector<double>>(train, ov, "--sweep", "comma-separated learning rates",
                              [](RunConfig& c, const std::vector<double>& v) { c.sweep = v; })
      ->delimiter(',');
  option<int>(train, ov, "--iterations", "gradient steps per rate",
              [](RunConfig& c, int v) { c.iterations = v; });
  option<int>(train, ov, "--hidden", "MLP hidden units (0 = automatic)",
              [](RunConfig& c, int v) { c.hidden = v; });

  auto* verify = app.add_subcommand("verify", "solve reduced models built from predictions");
  common_flags(verify, ov, config_path);
  option<std::string>(verify, ov, "--model", "model file",
                      [](RunConfig& c, const std::string& v) { c.model = v; });
  option<std::string>(verify, ov, "--mode", "in-sample, oos or stochastic",
                      [](RunConfig& c, const std::string& v) { c.mode = v; })
      ->check(CLI::IsMember({"in-sample", "oos", "stochastic"}));
  option<std::string>(verify, ov, "--fl", "feasibility layer: on, off or both",
                      [](RunConfig& c, const std::string& v) { c.fl = v; })
      ->check(CLI::IsMember({"on", "off", "both"}));
  option<long>(verify, ov, "--samples", "out-of-sample profiles to draw",
               [](RunConfig& c, long v) { c.oos_samples = v; });
  option<double>(verify, ov, "--alpha", "out-of-sample system-wide range",
                 [](RunConfig& c, double v) { c.oos_alpha = v; });
  option<double>(verify, ov, "--beta", "out-of-sample per bus and period range",
                 [](RunConfig& c, double v) { c.oos_beta = v; });

  auto* exp = app.add_subcommand("export", "write the full model as fixed-format MPS");
  common_flags(exp, ov, config_path);
  option<long>(exp, ov, "--sample", "dataset sample id to export instead of the base profile",
               [](RunConfig& c, long v) { c.sample = v; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunConfig config;
    if (!config_path.empty()) {
      json doc;
      try {
        doc = json::parse(read_file(config_path));
      } catch (const json::parse_error& e) {
        throw ParseError(config_path, e.what());
      }
      config = from_json(doc, fs::path(config_path).parent_path());
    }
    for (const auto& apply : ov) apply(config);

    if (gen->parsed()) cmd_generate(config, out);
    if (train->parsed()) cmd_train(config, out);
    if (verify->parsed()) cmd_verify(config, out);
    if (exp->parsed()) cmd_export(config, out);
    return kExitOk;
  } catch (const DivergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace ucr::cli
