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

// Experiment driver behind the CLI: named weight presets, run profiles,
// training/evaluation pipelines, variant sweeps, the MMR baseline and
// plot-data emission. Every command writes its artifacts into an output
// directory and is deterministic in its seeds.

#ifndef MARKETRANK_HARNESS_HPP_
#define MARKETRANK_HARNESS_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "marketrank/baselines.hpp"
#include "marketrank/corpus.hpp"
#include "marketrank/es.hpp"
#include "marketrank/fitness.hpp"
#include "marketrank/metrics.hpp"
#include "marketrank/policy.hpp"
#include "marketrank/synthgen.hpp"

namespace marketrank {

// One row of the weight-variant table. Ids follow the "-{a,b}" convention
// where a is the per-market-metric weight and b the diversity weight.
struct Preset {
  std::string id;
  double relevance = 1.0;
  double diversity = 0.0;
  double gini = 0.0;
  double incentive = 0.0;
};

const std::vector<Preset>& weight_presets();

class UnknownPresetError : public std::invalid_argument {
 public:
  explicit UnknownPresetError(const std::string& id);
};

const Preset& find_preset(const std::string& id);

// NDCG@10, ERR-IA@10, gini score at rank 1 and incentive at rank 1.
FitnessSpec make_spec(double relevance, double diversity, double gini, double incentive);
FitnessSpec preset_spec(const std::string& id);
FitnessSpec preset_spec(const Preset& preset);

// Off-table variant "-{market,diversity}" with relevance 1 - 2*market -
// diversity. Throws if the relevance weight would be negative.
Preset custom_variant(double market, double diversity);

enum class Profile { kDesk, kPaper };
Profile parse_profile(const std::string& name);
std::string profile_name(Profile profile);
GenConfig profile_gen_config(Profile profile);
EsConfig profile_es_config(Profile profile);

// G, SG, P or SP applied to `base`.
PolicyConfig policy_from_tag(const std::string& tag, PolicyConfig base = {});

struct RunConfig {
  std::string dataset_path;
  SplitFractions fractions;
  std::uint64_t split_seed = 0;
  PolicyConfig policy;
  std::string preset = "-{0,0}";
  std::optional<FitnessSpec> spec;  // overrides the preset when set
  EsConfig es;
  int eval_seeds = 5;
  std::uint64_t eval_seed = 0;
  std::string out_dir = "out";
  Profile profile = Profile::kDesk;

  FitnessSpec resolved_spec() const;
};

RunConfig default_run_config(Profile profile);
// Fields absent from `j` keep the profile defaults.
RunConfig run_config_from_json(const nlohmann::json& j, Profile profile);
nlohmann::json run_config_to_json(const RunConfig& config);

struct MetricStat {
  double mean = 0.0;
  double std = 0.0;  // sample std across seeds; 0 for one seed
  int seeds = 1;
};

struct SplitEvaluation {
  std::string split;
  std::string policy;
  std::map<std::string, MetricStat> metrics;  // includes "combined"
  std::vector<FitnessReport> per_seed;
  std::vector<LorenzPoint> lorenz;  // at FitnessSpec::gini_position, first seed
};

// Full-split evaluation without batching or subsampling. Static policies
// are run once; stochastic ones eval_seeds times.
SplitEvaluation evaluate_split(const Checkpoint& checkpoint, const Dataset& data,
                               const std::string& split_name, const FitnessSpec& spec,
                               int eval_seeds, std::uint64_t eval_seed);

nlohmann::json evaluation_to_json(const SplitEvaluation& eval);

DatasetSplits load_splits(const RunConfig& config);
const Dataset& split_by_name(const DatasetSplits& splits, const std::string& name);

void write_history_csv(const std::filesystem::path& path, const std::vector<IterationRecord>& history);
void write_timing_csv(const std::filesystem::path& path, const std::vector<IterationRecord>& history);
void write_lorenz_csv(const std::filesystem::path& path, const std::vector<LorenzPoint>& curve);

// Writes dataset.json style output and returns a one-line summary.
std::string run_gen(const GenConfig& config, const std::filesystem::path& out_path);

struct TrainOutputs {
  TrainResult result;
  std::filesystem::path checkpoint_path;
  std::filesystem::path history_path;
  std::filesystem::path config_path;
};

// Trains on the train split; writes checkpoint.json, history.csv,
// timing.csv and resolved_config.json into out_dir.
TrainOutputs run_train(const RunConfig& config, const DatasetSplits& splits,
                       const std::filesystem::path& out_dir, const ProgressFn& progress = {});

struct SweepOptions {
  std::vector<Preset> variants;
  std::vector<PolicyConfig> policies;
  std::vector<std::uint64_t> train_seeds = {0};
  std::vector<std::string> splits = {"validation", "test"};
  bool parallel = false;
  bool write_artifacts = true;  // per-run checkpoint and history files
};

struct SweepRow {
  std::string variant;
  std::string policy;
  std::uint64_t train_seed = 0;
  std::string split;
  Preset weights;
  std::map<std::string, MetricStat> metrics;
  std::vector<LorenzPoint> lorenz;
  std::string history_file;
  std::string error;  // non-empty when the run failed
};

struct SweepReport {
  std::vector<SweepRow> rows;
};

SweepReport run_sweep(const RunConfig& base, const DatasetSplits& splits,
                      const SweepOptions& options, const std::filesystem::path& out_dir);
void write_sweep_report(const SweepReport& report, const std::filesystem::path& out_dir);
SweepReport read_sweep_report(const std::filesystem::path& json_path);

// Combined fitness recomputed from the row's metric means.
double recompute_combined(const SweepRow& row);

struct MmrOutcome {
  double best_lambda = 1.0;
  std::vector<std::pair<double, double>> grid_combined;
  std::vector<SplitEvaluation> evaluations;
};

// Tunes the blend on validation, then evaluates every requested split.
MmrOutcome run_baseline_mmr(const RunConfig& base, const DatasetSplits& splits,
                            const RelevanceTable& relevance, std::span<const double> grid,
                            const std::vector<std::string>& eval_splits);
nlohmann::json mmr_outcome_to_json(const MmrOutcome& outcome);

// Trains the relevance-only pointwise policy the MMR baseline reranks.
Checkpoint train_relevance_model(const RunConfig& base, const DatasetSplits& splits);

// Turns history CSVs and sweep/baseline reports into tidy plot CSVs in
// out_dir. Files are taken as given; directories are scanned for
// history*.csv, sweep_report.json and mmr_report.json. Returns the files
// written; throws if an input is missing or nothing usable was found.
std::vector<std::filesystem::path> run_report(const std::vector<std::filesystem::path>& inputs,
                                              const std::filesystem::path& out_dir);

}  // namespace marketrank

#endif  // MARKETRANK_HARNESS_HPP_
