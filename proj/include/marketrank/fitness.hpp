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

// Scalar fitness: a normalized weighted combination of per-query metrics
// (aggregated over the batch) and market metrics (computed once over all
// rankings of the batch).

#ifndef MARKETRANK_FITNESS_HPP_
#define MARKETRANK_FITNESS_HPP_

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "marketrank/corpus.hpp"
#include "marketrank/random.hpp"
#include "marketrank/ranking.hpp"

namespace marketrank {

enum class MetricId { kNdcg, kErr, kErrIa, kGini, kIncentive, kChi2 };

// Names used in reports and configs: ndcg, err, err_ia, gini_score,
// incentive, chi2.
std::string metric_name(MetricId id);
std::optional<MetricId> parse_metric(const std::string& name);
bool is_market_metric(MetricId id);

struct FitnessTerm {
  MetricId metric = MetricId::kNdcg;
  double weight = 1.0;
  int k = 10;
  bool operator==(const FitnessTerm&) const = default;
};

struct FitnessSpec {
  std::vector<FitnessTerm> terms;
  // Empty means the mean; otherwise nearest-rank percentiles in (0, 100].
  std::vector<double> percentiles;
  bool use_traffic_weighting = false;
  int gini_position = 1;
  bool operator==(const FitnessSpec&) const = default;
};

// Throws std::invalid_argument: no positive weight, negative weight,
// duplicate metric, bad k or percentile.
void validate_spec(const FitnessSpec& spec);

struct FitnessReport {
  double combined = 0.0;
  std::map<std::string, double> per_metric;
  std::vector<std::string> batch_query_ids;
};

// sum W_i S_i / sum W_i over the FitnessSpec terms.
double combine(const FitnessSpec& spec, const std::map<std::string, double>& per_metric);

using RankFn = std::function<Ranking(const QuerySet&)>;

// Ranks every query in the batch once and scores the spec. `dataset`
// supplies the tier population and category set. A batch with no wealth
// scores gini 1.0 and logs a warning.
FitnessReport evaluate_fitness(const RankFn& rank_fn, std::span<const QuerySet> queries,
                               const Dataset& dataset, const FitnessSpec& spec);

// Scores already-built rankings (one per query).
FitnessReport score_rankings(std::span<const Ranking> rankings, const Dataset& dataset,
                             const FitnessSpec& spec);

// Uniform sample of min(m, n) docs without replacement; original order kept.
QuerySet subsample_documents(const QuerySet& query, int m, Rng& rng);

// Uniform sample of min(batch_size, |Q|) queries without replacement.
std::vector<const QuerySet*> sample_batch(const Dataset& dataset, int batch_size, Rng& rng);

}  // namespace marketrank

#endif  // MARKETRANK_FITNESS_HPP_
