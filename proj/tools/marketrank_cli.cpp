// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: gen, train, eval, sweep, baseline-mmr, report.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "marketrank/baselines.hpp"
#include "marketrank/harness.hpp"
#include "marketrank/json_io.hpp"
#include "marketrank/util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace marketrank;

namespace {

json read_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return json::parse(ss.str());
}

void write_json(const fs::path& path, const json& j) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

// Options shared by every subcommand.
struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string profile = "desk";
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config, "JSON config file");
  app->add_option("--seed", c.seed, "Root seed");
  app->add_option("--out-dir", c.out_dir, "Output directory");
  app->add_option("--profile", c.profile, "Scale profile")
      ->check(CLI::IsMember({"desk", "paper"}));
}

// Run-level options layered on top of the JSON config.
struct RunFlags {
  std::string dataset;
  std::string preset;
  std::string policy;
  std::optional<int> iters;
  std::optional<int> eval_seeds;
  std::optional<std::size_t> workers;
};

void add_run_flags(CLI::App* app, RunFlags& f) {
  app->add_option("--dataset", f.dataset, "Dataset JSON");
  app->add_option("--preset", f.preset, "Weight preset id, e.g. -{0.17,0.17}");
  app->add_option("--policy", f.policy, "G, SG, P or SP");
  app->add_option("--iters", f.iters, "ES iterations");
  app->add_option("--eval-seeds", f.eval_seeds, "Evaluation repeats for stochastic policies");
  app->add_option("--workers", f.workers, "Child-evaluation threads (0 = auto)");
}

RunConfig resolve_run(const Common& c, const RunFlags& f) {
  RunConfig cfg = run_config_from_json(read_config(c.config), parse_profile(c.profile));
  if (!f.dataset.empty()) cfg.dataset_path = f.dataset;
  if (!f.preset.empty()) {
    find_preset(f.preset);
    cfg.preset = f.preset;
    cfg.spec.reset();
  }
  if (!f.policy.empty()) cfg.policy = policy_from_tag(f.policy, cfg.policy);
  if (c.seed) cfg.es.seed = *c.seed;
  if (f.iters) cfg.es.iters = *f.iters;
  if (f.eval_seeds) cfg.eval_seeds = *f.eval_seeds;
  if (f.workers) cfg.es.workers = *f.workers;
  if (!c.out_dir.empty()) cfg.out_dir = c.out_dir;
  if (cfg.eval_seeds < 1) throw std::invalid_argument("eval_seeds must be >= 1");
  return cfg;
}

void print_eval(const SplitEvaluation& e) {
  std::cout << e.policy << " " << e.split << ":";
  for (const auto& [name, s] : e.metrics) {
    std::cout << " " << name << "=" << s.mean;
    if (s.seeds > 1) std::cout << "±" << s.std;
  }
  std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-objective marketplace learning-to-rank toolkit"};
  app.require_subcommand(1);

  Common gen_c;
  std::string gen_out;
  std::optional<int> gen_queries;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic marketplace dataset");
  add_common(gen, gen_c);
  gen->add_option("--out", gen_out, "Dataset path (default <out-dir>/dataset.json)");
  gen->add_option("--num-queries", gen_queries, "Number of queries");

  Common train_c;
  RunFlags train_f;
  auto* train_cmd = app.add_subcommand("train", "Train a policy on the train split");
  add_common(train_cmd, train_c);
  add_run_flags(train_cmd, train_f);

  Common eval_c;
  RunFlags eval_f;
  std::string eval_ckpt;
  std::vector<std::string> eval_splits = {"test"};
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a checkpoint on full splits");
  add_common(eval_cmd, eval_c);
  add_run_flags(eval_cmd, eval_f);
  eval_cmd->add_option("--checkpoint", eval_ckpt, "Checkpoint JSON")->required();
  eval_cmd->add_option("--split", eval_splits, "train, validation and/or test");

  Common sweep_c;
  RunFlags sweep_f;
  std::vector<std::string> sweep_variants;
  std::vector<std::string> sweep_policies = {"G"};
  std::vector<std::uint64_t> sweep_seeds = {0};
  bool sweep_parallel = false;
  std::vector<double> sweep_market;
  double sweep_diversity = 0.0;
  auto* sweep = app.add_subcommand("sweep", "Train and evaluate weight variants");
  add_common(sweep, sweep_c);
  add_run_flags(sweep, sweep_f);
  sweep->add_option("--variants", sweep_variants, "Preset ids (default: all)");
  sweep->add_option("--policies", sweep_policies, "Policy tags");
  sweep->add_option("--train-seeds", sweep_seeds, "ES seeds");
  sweep->add_flag("--parallel", sweep_parallel, "Run variants concurrently");
  sweep->add_option("--market-weights", sweep_market,
                    "Off-table variants: gini and incentive weight each")
      ->delimiter(',');
  sweep->add_option("--diversity-weight", sweep_diversity,
                    "Diversity weight for --market-weights variants");

  Common mmr_c;
  RunFlags mmr_f;
  std::string mmr_relevance = "train";
  auto* mmr = app.add_subcommand("baseline-mmr", "Tune and evaluate the MMR baseline");
  add_common(mmr, mmr_c);
  add_run_flags(mmr, mmr_f);
  mmr->add_option("--relevance", mmr_relevance,
                  "\"train\" (relevance-only pointwise ES), \"grade_oracle\" or a checkpoint");

  Common report_c;
  std::vector<std::string> report_inputs;
  auto* report = app.add_subcommand("report", "Emit plot-data CSVs");
  add_common(report, report_c);
  report->add_option("inputs", report_inputs, "History CSVs, reports or directories")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      GenConfig g = profile_gen_config(parse_profile(gen_c.profile));
      const json j = read_config(gen_c.config);
      if (auto it = j.find("gen"); it != j.end()) from_json(*it, g);
      else if (!j.empty()) from_json(j, g);
      if (gen_c.seed) g.seed = *gen_c.seed;
      if (gen_queries) g.num_queries = *gen_queries;
      const fs::path out = !gen_out.empty() ? fs::path(gen_out)
                           : fs::path(gen_c.out_dir.empty() ? "out" : gen_c.out_dir) / "dataset.json";
      std::cout << run_gen(g, out) << "\n" << "wrote " << out.string() << "\n";
      return 0;
    }
    if (train_cmd->parsed()) {
      const RunConfig cfg = resolve_run(train_c, train_f);
      const DatasetSplits splits = load_splits(cfg);
      const TrainOutputs out = run_train(cfg, splits, cfg.out_dir, [](const IterationRecord& r) {
        if (r.iteration % 10 == 0) {
          log_info("iter " + std::to_string(r.iteration) + " combined " + std::to_string(r.combined));
        }
      });
      std::cout << "wrote " << out.checkpoint_path.string() << ", " << out.history_path.string()
                << ", " << out.config_path.string() << "\n";
      return 0;
    }
    if (eval_cmd->parsed()) {
      const RunConfig cfg = resolve_run(eval_c, eval_f);
      const DatasetSplits splits = load_splits(cfg);
      Checkpoint ckpt = load_checkpoint(eval_ckpt);
      json all = json::array();
      for (const auto& s : eval_splits) {
        const SplitEvaluation e = evaluate_split(ckpt, split_by_name(splits, s), s,
                                                 cfg.resolved_spec(), cfg.eval_seeds,
                                                 cfg.eval_seed);
        print_eval(e);
        write_lorenz_csv(fs::path(cfg.out_dir) / ("lorenz_" + s + ".csv"), e.lorenz);
        all.push_back(evaluation_to_json(e));
      }
      write_json(fs::path(cfg.out_dir) / "eval_report.json", json{{"evaluations", all}});
      return 0;
    }
    if (sweep->parsed()) {
      const RunConfig cfg = resolve_run(sweep_c, sweep_f);
      const DatasetSplits splits = load_splits(cfg);
      SweepOptions opts;
      for (const auto& id : sweep_variants) opts.variants.push_back(find_preset(id));
      for (double m : sweep_market) opts.variants.push_back(custom_variant(m, sweep_diversity));
      if (opts.variants.empty()) opts.variants = weight_presets();
      for (const auto& t : sweep_policies) opts.policies.push_back(policy_from_tag(t, cfg.policy));
      opts.train_seeds = sweep_seeds;
      opts.parallel = sweep_parallel;
      const SweepReport rep = run_sweep(cfg, splits, opts, cfg.out_dir);
      write_sweep_report(rep, cfg.out_dir);
      int failed = 0;
      for (const auto& r : rep.rows) failed += r.error.empty() ? 0 : 1;
      std::cout << rep.rows.size() << " report rows (" << failed << " failed), wrote "
                << (fs::path(cfg.out_dir) / "sweep_report.csv").string() << "\n";
      return 0;
    }
    if (mmr->parsed()) {
      const RunConfig cfg = resolve_run(mmr_c, mmr_f);
      const DatasetSplits splits = load_splits(cfg);
      RelevanceTable rel;
      if (mmr_relevance == "train") {
        const Checkpoint ck = train_relevance_model(cfg, splits);
        save_checkpoint(ck, fs::path(cfg.out_dir) / "relevance_checkpoint.json");
        for (const auto* d : {&splits.validation, &splits.test}) {
          for (auto& [k, v] : checkpoint_scores(*d, ck)) rel[k] = std::move(v);
        }
      } else {
        for (const auto* d : {&splits.validation, &splits.test}) {
          for (auto& [k, v] : relevance_scores(*d, mmr_relevance)) rel[k] = std::move(v);
        }
      }
      const auto grid = default_lambda_grid();
      const MmrOutcome out = run_baseline_mmr(cfg, splits, rel, grid, {"validation", "test"});
      std::cout << "best lambda " << out.best_lambda << "\n";
      for (const auto& e : out.evaluations) print_eval(e);
      write_json(fs::path(cfg.out_dir) / "mmr_report.json", mmr_outcome_to_json(out));
      return 0;
    }
    if (report->parsed()) {
      std::vector<fs::path> inputs(report_inputs.begin(), report_inputs.end());
      const auto written =
          run_report(inputs, report_c.out_dir.empty() ? fs::path("out/report") : fs::path(report_c.out_dir));
      for (const auto& p : written) std::cout << "wrote " << p.string() << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
