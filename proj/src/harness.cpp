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

#include "marketrank/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "marketrank/csv.hpp"
#include "marketrank/json_io.hpp"
#include "marketrank/random.hpp"
#include "marketrank/util.hpp"

namespace marketrank {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return json::parse(ss.str());
}

MetricStat summarize(const std::vector<double>& values) {
  MetricStat s;
  s.seeds = static_cast<int>(values.size());
  if (values.empty()) return s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / (values.size() - 1));
  }
  return s;
}

std::vector<LorenzPoint> safe_lorenz(const MarketLedger& ledger) {
  try {
    return lorenz_curve(ledger);
  } catch (const ZeroWealthError&) {
    log_warning("zero-wealth ledger; emitting the line of equality");
    return {{0.0, 0.0}, {1.0, 1.0}};
  }
}

json lorenz_to_json(const std::vector<LorenzPoint>& curve) {
  json a = json::array();
  for (const auto& p : curve) a.push_back(json::array({p.population, p.wealth}));
  return a;
}

std::vector<LorenzPoint> lorenz_from_json(const json& a) {
  std::vector<LorenzPoint> curve;
  for (const auto& p : a) curve.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  return curve;
}

json metrics_to_json(const std::map<std::string, MetricStat>& metrics) {
  json j = json::object();
  for (const auto& [name, s] : metrics) {
    j[name] = {{"mean", s.mean}, {"std", s.std}, {"seeds", s.seeds}};
  }
  return j;
}

std::map<std::string, MetricStat> metrics_from_json(const json& j) {
  std::map<std::string, MetricStat> out;
  for (const auto& [name, v] : j.items()) {
    out[name] = {v.at("mean").get<double>(), v.at("std").get<double>(),
                 v.at("seeds").get<int>()};
  }
  return out;
}

json preset_to_json(const Preset& p) {
  return {{"id", p.id},
          {"relevance", p.relevance},
          {"diversity", p.diversity},
          {"gini", p.gini},
          {"incentive", p.incentive}};
}

Preset preset_from_json(const json& j) {
  return {j.at("id").get<std::string>(), j.at("relevance").get<double>(),
          j.at("diversity").get<double>(), j.at("gini").get<double>(),
          j.at("incentive").get<double>()};
}

// Metric names the report columns use, in a fixed order.
const std::vector<std::string>& report_metrics() {
  static const std::vector<std::string> names = {"combined", "ndcg", "err_ia",
                                                 "gini_score", "incentive"};
  return names;
}

}  // namespace

UnknownPresetError::UnknownPresetError(const std::string& id)
    : std::invalid_argument([&] {
        std::string msg = "unknown preset \"" + id + "\"; valid presets:";
        for (const auto& p : weight_presets()) msg += " " + p.id;
        return msg;
      }()) {}

const std::vector<Preset>& weight_presets() {
  static const std::vector<Preset> presets = {
      {"-{0,0}", 1.00, 0.00, 0.00, 0.00},
      {"-{0.05,0.05}", 0.85, 0.05, 0.05, 0.05},
      {"-{0.1,0.1}", 0.70, 0.10, 0.10, 0.10},
      {"-{0.17,0.17}", 0.49, 0.17, 0.17, 0.17},
      {"-{0.25,0.25}", 0.25, 0.25, 0.25, 0.25},
      {"-{0.3,0.3}", 0.10, 0.30, 0.30, 0.30},
      {"-{0.05,0}", 0.90, 0.00, 0.05, 0.05},
      {"-{0.1,0}", 0.80, 0.00, 0.10, 0.10},
      {"-{0.25,0}", 0.50, 0.00, 0.25, 0.25},
      {"-{0.33,0}", 0.33, 0.00, 0.33, 0.33},
      {"-{0.4,0}", 0.20, 0.00, 0.40, 0.40},
  };
  return presets;
}

const Preset& find_preset(const std::string& id) {
  for (const auto& p : weight_presets()) {
    if (p.id == id) return p;
  }
  throw UnknownPresetError(id);
}

FitnessSpec make_spec(double relevance, double diversity, double gini, double incentive) {
  FitnessSpec spec;
  spec.terms = {{MetricId::kNdcg, relevance, 10},
                {MetricId::kErrIa, diversity, 10},
                {MetricId::kGini, gini, 1},
                {MetricId::kIncentive, incentive, 1}};
  spec.gini_position = 1;
  return spec;
}

FitnessSpec preset_spec(const std::string& id) { return preset_spec(find_preset(id)); }

FitnessSpec preset_spec(const Preset& p) {
  return make_spec(p.relevance, p.diversity, p.gini, p.incentive);
}

Preset custom_variant(double market, double diversity) {
  const double relevance = 1.0 - 2.0 * market - diversity;
  if (market < 0.0 || diversity < 0.0 || relevance < -1e-12) {
    throw std::invalid_argument("variant weights must be non-negative and sum to at most 1");
  }
  auto fmt = [](double v) {
    std::ostringstream s;
    s << v;
    return s.str();
  };
  return {"-{" + fmt(market) + "," + fmt(diversity) + "}", std::max(relevance, 0.0), diversity,
          market, market};
}

Profile parse_profile(const std::string& name) {
  if (name == "desk") return Profile::kDesk;
  if (name == "paper") return Profile::kPaper;
  throw std::invalid_argument("unknown profile \"" + name + "\"; valid profiles: desk paper");
}

std::string profile_name(Profile profile) {
  return profile == Profile::kDesk ? "desk" : "paper";
}

GenConfig profile_gen_config(Profile profile) {
  GenConfig g;
  if (profile == Profile::kPaper) g.num_queries = 5000;
  return g;
}

EsConfig profile_es_config(Profile profile) {
  EsConfig e;
  if (profile == Profile::kDesk) {
    e.lambda = 32;
    e.mu = 8;
    e.iters = 200;
  } else {
    e.lambda = 768;
    e.mu = 50;
    e.iters = 200;
  }
  e.sigma = 0.1;
  e.mask_p = 0.05;
  e.update = true;
  e.batch_size = 256;
  return e;
}

PolicyConfig policy_from_tag(const std::string& tag, PolicyConfig base) {
  if (tag == "G" || tag == "SG") base.kind = PolicyKind::kGreedy;
  else if (tag == "P" || tag == "SP") base.kind = PolicyKind::kPointwise;
  else throw std::invalid_argument("unknown policy \"" + tag + "\"; valid policies: G SG P SP");
  base.value_fn = tag[0] == 'S' ? ValueFunction::kStochastic : ValueFunction::kStatic;
  return base;
}

FitnessSpec RunConfig::resolved_spec() const {
  return spec ? *spec : preset_spec(preset);
}

RunConfig default_run_config(Profile profile) {
  RunConfig c;
  c.profile = profile;
  c.es = profile_es_config(profile);
  return c;
}

RunConfig run_config_from_json(const json& j, Profile profile) {
  RunConfig c = default_run_config(profile);
  if (auto it = j.find("profile"); it != j.end()) {
    c = default_run_config(parse_profile(it->get<std::string>()));
  }
  if (auto it = j.find("dataset"); it != j.end()) c.dataset_path = it->get<std::string>();
  if (auto it = j.find("split"); it != j.end()) c.fractions = it->get<SplitFractions>();
  if (auto it = j.find("split_seed"); it != j.end()) c.split_seed = it->get<std::uint64_t>();
  if (auto it = j.find("policy"); it != j.end()) {
    PolicyConfig p = c.policy;
    from_json(*it, p);
    c.policy = p;
  }
  if (auto it = j.find("preset"); it != j.end()) {
    c.preset = it->get<std::string>();
    find_preset(c.preset);
  }
  // A resolved config echoes the preset's spec; only explicit specs override.
  const bool from_preset = j.value("fitness_source", std::string("explicit")) == "preset";
  if (auto it = j.find("fitness"); it != j.end() && !from_preset) c.spec = it->get<FitnessSpec>();
  if (auto it = j.find("es"); it != j.end()) {
    EsConfig e = c.es;
    from_json(*it, e);
    c.es = e;
  }
  if (auto it = j.find("eval_seeds"); it != j.end()) c.eval_seeds = it->get<int>();
  if (auto it = j.find("eval_seed"); it != j.end()) c.eval_seed = it->get<std::uint64_t>();
  if (auto it = j.find("out_dir"); it != j.end()) c.out_dir = it->get<std::string>();
  if (c.eval_seeds < 1) throw std::invalid_argument("eval_seeds must be >= 1");
  return c;
}

json run_config_to_json(const RunConfig& c) {
  json j = {{"profile", profile_name(c.profile)},
            {"dataset", c.dataset_path},
            {"split", c.fractions},
            {"split_seed", c.split_seed},
            {"policy", c.policy},
            {"preset", c.preset},
            {"fitness", c.resolved_spec()},
            {"es", c.es},
            {"eval_seeds", c.eval_seeds},
            {"eval_seed", c.eval_seed},
            {"out_dir", c.out_dir}};
  if (!c.spec) j["fitness_source"] = "preset";
  else j["fitness_source"] = "explicit";
  return j;
}

SplitEvaluation evaluate_split(const Checkpoint& checkpoint, const Dataset& data,
                               const std::string& split_name, const FitnessSpec& spec,
                               int eval_seeds, std::uint64_t eval_seed) {
  if (eval_seeds < 1) throw std::invalid_argument("eval_seeds must be >= 1");
  check_layout(checkpoint.params, checkpoint.config);
  validate_spec(spec);
  const int runs = checkpoint.config.stochastic() ? eval_seeds : 1;
  SplitEvaluation out;
  out.split = split_name;
  out.policy = policy_tag(checkpoint.config);
  std::map<std::string, std::vector<double>> samples;
  for (int s = 0; s < runs; ++s) {
    Rng rng = make_rng(eval_seed, {label_hash("eval"), static_cast<std::uint64_t>(s)});
    std::vector<Ranking> rankings;
    rankings.reserve(data.queries.size());
    for (const auto& q : data.queries) {
      rankings.push_back(rank(checkpoint.params, checkpoint.config, q, rng));
    }
    FitnessReport report = score_rankings(rankings, data, spec);
    samples["combined"].push_back(report.combined);
    for (const auto& [name, v] : report.per_metric) samples[name].push_back(v);
    if (s == 0) out.lorenz = safe_lorenz(build_ledger(rankings, data, spec.gini_position));
    out.per_seed.push_back(std::move(report));
  }
  for (const auto& [name, values] : samples) out.metrics[name] = summarize(values);
  return out;
}

json evaluation_to_json(const SplitEvaluation& eval) {
  json per_seed = json::array();
  for (const auto& r : eval.per_seed) {
    json rj = r;
    rj.erase("batch_query_ids");
    per_seed.push_back(rj);
  }
  return {{"split", eval.split},
          {"policy", eval.policy},
          {"metrics", metrics_to_json(eval.metrics)},
          {"per_seed", per_seed},
          {"lorenz", lorenz_to_json(eval.lorenz)}};
}

DatasetSplits load_splits(const RunConfig& config) {
  if (config.dataset_path.empty()) throw std::invalid_argument("no dataset path given");
  return split(load_dataset(config.dataset_path), config.fractions, config.split_seed);
}

const Dataset& split_by_name(const DatasetSplits& splits, const std::string& name) {
  if (name == "train") return splits.train;
  if (name == "validation") return splits.validation;
  if (name == "test") return splits.test;
  throw std::invalid_argument("unknown split \"" + name + "\"; valid splits: train validation test");
}

void write_history_csv(const fs::path& path, const std::vector<IterationRecord>& history) {
  std::set<std::string> names;
  for (const auto& h : history) {
    for (const auto& [n, v] : h.metrics) names.insert(n);
  }
  CsvTable t;
  t.header = {"iteration", "combined"};
  t.header.insert(t.header.end(), names.begin(), names.end());
  t.header.insert(t.header.end(), {"parent_fitness", "candidate_fitness", "took_candidate"});
  for (const auto& h : history) {
    CsvRow row = {std::to_string(h.iteration), format_real(h.combined)};
    for (const auto& n : names) {
      auto it = h.metrics.find(n);
      row.push_back(it == h.metrics.end() ? "" : format_real(it->second));
    }
    row.push_back(format_real(h.parent_fitness));
    row.push_back(format_real(h.candidate_fitness));
    row.push_back(h.took_candidate ? "1" : "0");
    t.rows.push_back(std::move(row));
  }
  write_csv(path, t);
}

void write_timing_csv(const fs::path& path, const std::vector<IterationRecord>& history) {
  CsvTable t;
  t.header = {"iteration", "wall_seconds"};
  for (const auto& h : history) {
    t.rows.push_back({std::to_string(h.iteration), format_real(h.wall_seconds)});
  }
  write_csv(path, t);
}

void write_lorenz_csv(const fs::path& path, const std::vector<LorenzPoint>& curve) {
  CsvTable t;
  t.header = {"cumulative_population", "cumulative_wealth"};
  for (const auto& p : curve) t.rows.push_back({format_real(p.population), format_real(p.wealth)});
  write_csv(path, t);
}

std::string run_gen(const GenConfig& config, const fs::path& out_path) {
  const Dataset d = generate(config);
  if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());
  save_dataset(d, out_path);
  std::ostringstream s;
  s << "queries=" << d.queries.size() << " feature_dim=" << d.feature_dim
    << " categories=" << d.categories.size();
  return s.str();
}

TrainOutputs run_train(const RunConfig& config, const DatasetSplits& splits,
                       const fs::path& out_dir, const ProgressFn& progress) {
  const FitnessSpec spec = config.resolved_spec();
  TrainOutputs out;
  out.result = train(splits.train, config.policy, spec, config.es, progress);
  fs::create_directories(out_dir);
  out.checkpoint_path = out_dir / "checkpoint.json";
  out.history_path = out_dir / "history.csv";
  out.config_path = out_dir / "resolved_config.json";
  save_checkpoint({config.policy, out.result.params}, out.checkpoint_path);
  write_history_csv(out.history_path, out.result.history);
  write_timing_csv(out_dir / "timing.csv", out.result.history);
  json resolved = run_config_to_json(config);
  resolved["split_sizes"] = {{"train", splits.train.queries.size()},
                             {"validation", splits.validation.queries.size()},
                             {"test", splits.test.queries.size()}};
  resolved["param_count"] = out.result.params.size();
  write_text(out.config_path, resolved.dump(2) + "\n");
  return out;
}

SweepReport run_sweep(const RunConfig& base, const DatasetSplits& splits,
                      const SweepOptions& options, const fs::path& out_dir) {
  for (const auto& s : options.splits) split_by_name(splits, s);
  if (options.policies.empty()) throw std::invalid_argument("sweep needs at least one policy");
  if (options.train_seeds.empty()) throw std::invalid_argument("sweep needs at least one seed");

  struct Job {
    Preset variant;
    PolicyConfig policy;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const auto& v : options.variants) {
    for (const auto& p : options.policies) {
      for (auto s : options.train_seeds) jobs.push_back({v, p, s});
    }
  }

  std::vector<std::vector<SweepRow>> results(jobs.size());
  auto run_job = [&](std::size_t i) {
    const Job& job = jobs[i];
    RunConfig cfg = base;
    cfg.preset = job.variant.id;
    cfg.spec = preset_spec(job.variant);
    cfg.policy = job.policy;
    cfg.es.seed = job.seed;
    const std::string tag = policy_tag(job.policy);
    const fs::path run_dir =
        out_dir / "runs" / (job.variant.id + "_" + tag + "_seed" + std::to_string(job.seed));
    std::vector<SweepRow> rows;
    auto blank_row = [&](const std::string& split_name) {
      SweepRow r;
      r.variant = job.variant.id;
      r.policy = tag;
      r.train_seed = job.seed;
      r.split = split_name;
      r.weights = job.variant;
      return r;
    };
    try {
      const FitnessSpec spec = cfg.resolved_spec();
      Checkpoint ckpt;
      std::string history_file;
      if (options.write_artifacts) {
        TrainOutputs t = run_train(cfg, splits, run_dir);
        ckpt = {cfg.policy, t.result.params};
        history_file = t.history_path.string();
      } else {
        ckpt = {cfg.policy, train(splits.train, cfg.policy, spec, cfg.es).params};
      }
      for (const auto& split_name : options.splits) {
        SplitEvaluation e = evaluate_split(ckpt, split_by_name(splits, split_name), split_name,
                                           spec, cfg.eval_seeds, cfg.eval_seed);
        SweepRow r = blank_row(split_name);
        r.metrics = std::move(e.metrics);
        r.lorenz = std::move(e.lorenz);
        r.history_file = history_file;
        rows.push_back(std::move(r));
      }
    } catch (const std::exception& ex) {
      log_warning("sweep run " + job.variant.id + " " + tag + " seed " + std::to_string(job.seed) +
                  " failed: " + ex.what());
      rows.clear();
      for (const auto& split_name : options.splits) {
        SweepRow r = blank_row(split_name);
        r.error = ex.what();
        rows.push_back(std::move(r));
      }
    }
    results[i] = std::move(rows);
  };
  if (options.parallel) {
    parallel_for(jobs.size(), 0, run_job);
  } else {
    for (std::size_t i = 0; i < jobs.size(); ++i) run_job(i);
  }

  SweepReport report;
  for (auto& rows : results) {
    for (auto& r : rows) report.rows.push_back(std::move(r));
  }
  return report;
}

double recompute_combined(const SweepRow& row) {
  std::map<std::string, double> per_metric;
  for (const auto& [name, s] : row.metrics) per_metric[name] = s.mean;
  const FitnessSpec spec = make_spec(row.weights.relevance, row.weights.diversity,
                                     row.weights.gini, row.weights.incentive);
  return combine(spec, per_metric);
}

void write_sweep_report(const SweepReport& report, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  CsvTable t;
  t.header = {"variant", "policy", "train_seed", "split", "w_relevance", "w_diversity",
              "w_gini", "w_incentive"};
  for (const auto& m : report_metrics()) {
    t.header.push_back(m + "_mean");
    t.header.push_back(m + "_std");
  }
  t.header.push_back("eval_seeds");
  t.header.push_back("error");
  json rows = json::array();
  for (const auto& r : report.rows) {
    CsvRow row = {r.variant,
                  r.policy,
                  std::to_string(r.train_seed),
                  r.split,
                  format_real(r.weights.relevance),
                  format_real(r.weights.diversity),
                  format_real(r.weights.gini),
                  format_real(r.weights.incentive)};
    int seeds = 0;
    for (const auto& m : report_metrics()) {
      auto it = r.metrics.find(m);
      if (it == r.metrics.end()) {
        row.insert(row.end(), {"", ""});
      } else {
        row.push_back(format_real(it->second.mean));
        row.push_back(format_real(it->second.std));
        seeds = it->second.seeds;
      }
    }
    row.push_back(r.error.empty() ? std::to_string(seeds) : "");
    row.push_back(r.error);
    t.rows.push_back(std::move(row));
    rows.push_back({{"variant", r.variant},
                    {"policy", r.policy},
                    {"train_seed", r.train_seed},
                    {"split", r.split},
                    {"weights", preset_to_json(r.weights)},
                    {"metrics", metrics_to_json(r.metrics)},
                    {"lorenz", lorenz_to_json(r.lorenz)},
                    {"history_file", r.history_file},
                    {"error", r.error}});
  }
  write_csv(out_dir / "sweep_report.csv", t);
  write_text(out_dir / "sweep_report.json", json{{"rows", rows}}.dump(2) + "\n");
}

SweepReport read_sweep_report(const fs::path& json_path) {
  const json j = read_json_file(json_path);
  SweepReport report;
  for (const auto& rj : j.at("rows")) {
    SweepRow r;
    r.variant = rj.at("variant").get<std::string>();
    r.policy = rj.at("policy").get<std::string>();
    r.train_seed = rj.at("train_seed").get<std::uint64_t>();
    r.split = rj.at("split").get<std::string>();
    r.weights = preset_from_json(rj.at("weights"));
    r.metrics = metrics_from_json(rj.at("metrics"));
    r.lorenz = lorenz_from_json(rj.at("lorenz"));
    r.history_file = rj.value("history_file", "");
    r.error = rj.value("error", "");
    report.rows.push_back(std::move(r));
  }
  return report;
}

Checkpoint train_relevance_model(const RunConfig& base, const DatasetSplits& splits) {
  RunConfig cfg = base;
  cfg.policy.kind = PolicyKind::kPointwise;
  cfg.policy.value_fn = ValueFunction::kStatic;
  cfg.preset = "-{0,0}";
  cfg.spec.reset();
  return {cfg.policy, train(splits.train, cfg.policy, cfg.resolved_spec(), cfg.es).params};
}

MmrOutcome run_baseline_mmr(const RunConfig& base, const DatasetSplits& splits,
                            const RelevanceTable& relevance, std::span<const double> grid,
                            const std::vector<std::string>& eval_splits) {
  const FitnessSpec spec = base.resolved_spec();
  const TuneResult tuned =
      tune_lambda(splits.validation, relevance, spec, grid, base.policy.k_rank);
  MmrOutcome out;
  out.best_lambda = tuned.best_lambda;
  for (const auto& [lambda, report] : tuned.grid) {
    out.grid_combined.emplace_back(lambda, report.combined);
  }
  const MmrConfig mmr{tuned.best_lambda, base.policy.k_rank};
  for (const auto& split_name : eval_splits) {
    const Dataset& data = split_by_name(splits, split_name);
    std::vector<Ranking> rankings;
    rankings.reserve(data.queries.size());
    for (const auto& q : data.queries) {
      auto it = relevance.find(q.query_id);
      if (it == relevance.end()) {
        throw std::invalid_argument("no relevance scores for query " + q.query_id);
      }
      rankings.push_back(mmr_rank(it->second, q, mmr));
    }
    FitnessReport report = score_rankings(rankings, data, spec);
    SplitEvaluation e;
    e.split = split_name;
    e.policy = "MMR";
    e.metrics["combined"] = summarize({report.combined});
    for (const auto& [name, v] : report.per_metric) e.metrics[name] = summarize({v});
    e.lorenz = safe_lorenz(build_ledger(rankings, data, spec.gini_position));
    e.per_seed.push_back(std::move(report));
    out.evaluations.push_back(std::move(e));
  }
  return out;
}

json mmr_outcome_to_json(const MmrOutcome& outcome) {
  json grid = json::array();
  for (const auto& [lambda, combined] : outcome.grid_combined) {
    grid.push_back({{"lambda", lambda}, {"combined", combined}});
  }
  json evals = json::array();
  for (const auto& e : outcome.evaluations) evals.push_back(evaluation_to_json(e));
  return {{"best_lambda", outcome.best_lambda}, {"grid", grid}, {"evaluations", evals}};
}

namespace {

struct ReportInputs {
  std::vector<fs::path> histories;
  std::vector<fs::path> sweeps;
  std::vector<fs::path> mmr;
};

void classify(const fs::path& p, ReportInputs& in) {
  const std::string name = p.filename().string();
  if (name.rfind("history", 0) == 0 && p.extension() == ".csv") {
    in.histories.push_back(p);
  } else if (name == "sweep_report.json") {
    in.sweeps.push_back(p);
  } else if (name == "mmr_report.json") {
    in.mmr.push_back(p);
  }
}

std::string trace_name(const fs::path& history, const fs::path& root) {
  fs::path rel = history.lexically_relative(root);
  std::string s = (rel.empty() || rel.native()[0] == '.') ? history.stem().string()
                                                          : rel.replace_extension().string();
  for (char& c : s) {
    if (c == '/' || c == '\\') c = '_';
  }
  return s;
}

}  // namespace

std::vector<fs::path> run_report(const std::vector<fs::path>& inputs, const fs::path& out_dir) {
  std::vector<std::string> missing;
  for (const auto& p : inputs) {
    if (!fs::exists(p)) missing.push_back(p.string());
  }
  if (!missing.empty()) {
    std::string msg = "missing report inputs:";
    for (const auto& m : missing) msg += " " + m;
    throw std::runtime_error(msg);
  }
  ReportInputs in;
  std::vector<std::pair<fs::path, fs::path>> history_roots;
  for (const auto& p : inputs) {
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::recursive_directory_iterator(p)) {
        if (e.is_regular_file()) found.push_back(e.path());
      }
      std::sort(found.begin(), found.end());
      for (const auto& f : found) {
        const std::size_t before = in.histories.size();
        classify(f, in);
        if (in.histories.size() > before) history_roots.emplace_back(f, p);
      }
    } else {
      const std::size_t before = in.histories.size();
      classify(p, in);
      if (in.histories.size() > before) history_roots.emplace_back(p, p.parent_path());
    }
  }
  if (in.histories.empty() && in.sweeps.empty() && in.mmr.empty()) {
    throw std::runtime_error(
        "no report inputs found (expected history*.csv, sweep_report.json or mmr_report.json)");
  }
  fs::create_directories(out_dir);
  std::vector<fs::path> written;

  // MMR test-split means act as horizontal references in every trace.
  std::vector<std::pair<std::string, double>> baselines;
  for (const auto& p : in.mmr) {
    const json j = read_json_file(p);
    for (const auto& e : j.at("evaluations")) {
      if (e.at("split").get<std::string>() != "test") continue;
      for (const auto& [name, v] : e.at("metrics").items()) {
        baselines.emplace_back("mmr_" + name, v.at("mean").get<double>());
      }
    }
  }

  std::set<std::string> used_names;
  for (const auto& [history, root] : history_roots) {
    const CsvTable h = read_csv(history);
    if (h.rows.empty()) throw std::runtime_error("history file has no rows: " + history.string());
    const int iter_col = h.column("iteration");
    if (iter_col < 0) throw std::runtime_error("history file lacks an iteration column: " +
                                               history.string());
    CsvTable trace;
    trace.header = {"iter", "metric", "value"};
    for (const auto& row : h.rows) {
      for (std::size_t c = 0; c < h.header.size(); ++c) {
        const std::string& name = h.header[c];
        if (static_cast<int>(c) == iter_col || name == "took_candidate") continue;
        if (c >= row.size() || row[c].empty()) continue;
        trace.rows.push_back({row[iter_col], name, row[c]});
      }
    }
    for (const auto& [name, v] : baselines) {
      trace.rows.push_back({"", name, format_real(v)});
    }
    std::string name = "trace_" + trace_name(history, root);
    while (!used_names.insert(name).second) name += "_";
    const fs::path out = out_dir / (name + ".csv");
    write_csv(out, trace);
    written.push_back(out);
  }

  if (!in.sweeps.empty()) {
    CsvTable series;
    series.header = {"policy", "split", "variant", "market_weight", "diversity_weight",
                     "gini_score_mean", "gini_score_std", "incentive_mean", "incentive_std",
                     "ndcg_mean", "train_seeds"};
    CsvTable lorenz;
    lorenz.header = {"variant", "policy", "train_seed", "split", "point",
                     "cumulative_population", "cumulative_wealth"};
    for (const auto& p : in.sweeps) {
      const SweepReport report = read_sweep_report(p);
      // Averages over train seeds per (policy, split, variant).
      std::map<std::tuple<std::string, std::string, double, double, std::string>,
               std::vector<const SweepRow*>>
          groups;
      for (const auto& r : report.rows) {
        if (!r.error.empty()) continue;
        groups[{r.policy, r.split, r.weights.gini, r.weights.diversity, r.variant}].push_back(&r);
        for (std::size_t i = 0; i < r.lorenz.size(); ++i) {
          lorenz.rows.push_back({r.variant, r.policy, std::to_string(r.train_seed), r.split,
                                 std::to_string(i), format_real(r.lorenz[i].population),
                                 format_real(r.lorenz[i].wealth)});
        }
      }
      for (const auto& [key, rows] : groups) {
        auto stat = [&](const std::string& metric) {
          std::vector<double> v;
          for (const auto* r : rows) {
            auto it = r->metrics.find(metric);
            if (it != r->metrics.end()) v.push_back(it->second.mean);
          }
          return summarize(v);
        };
        const MetricStat g = stat("gini_score"), inc = stat("incentive"), nd = stat("ndcg");
        const auto& [policy, split_name, market, diversity, variant] = key;
        series.rows.push_back({policy, split_name, variant, format_real(market),
                               format_real(diversity), format_real(g.mean), format_real(g.std),
                               format_real(inc.mean), format_real(inc.std), format_real(nd.mean),
                               std::to_string(rows.size())});
      }
    }
    write_csv(out_dir / "gini_vs_weight.csv", series);
    write_csv(out_dir / "lorenz.csv", lorenz);
    written.push_back(out_dir / "gini_vs_weight.csv");
    written.push_back(out_dir / "lorenz.csv");
  }
  return written;
}

}  // namespace marketrank
