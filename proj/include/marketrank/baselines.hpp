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

// Maximal marginal relevance re-ranking with taxonomy Jaccard similarity,
// plus a grid tuner for its blend parameter.

#ifndef MARKETRANK_BASELINES_HPP_
#define MARKETRANK_BASELINES_HPP_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "marketrank/corpus.hpp"
#include "marketrank/fitness.hpp"
#include "marketrank/policy.hpp"
#include "marketrank/ranking.hpp"

namespace marketrank {

// |nodes(a) & nodes(b)| / |nodes(a) | nodes(b)| over taxonomy path nodes.
double jaccard_similarity(const Document& a, const Document& b);

struct MmrConfig {
  double blend_lambda = 0.5;
  int k_rank = 10;
};

// Greedy argmax of lambda * rel(d) - (1 - lambda) * max_{s in S} sim(d, s).
// The first pick is by relevance alone. `scores` align with judged docs and
// are expected in [0, 1].
Ranking mmr_rank(std::span<const double> scores, const QuerySet& query,
                 const MmrConfig& config);

// Relevance score per judged doc, per query, min-max normalized to [0, 1]
// within the query (all 1 when a query's scores are all equal).
using RelevanceTable = std::map<std::string, std::vector<double>>;

// Grades as relevance.
RelevanceTable grade_oracle_scores(const Dataset& dataset);
// Pointwise scores of a static checkpoint.
RelevanceTable checkpoint_scores(const Dataset& dataset, const Checkpoint& checkpoint);
// `source` is "grade_oracle" or a checkpoint path.
RelevanceTable relevance_scores(const Dataset& dataset, const std::string& source);

void min_max_normalize(std::vector<double>& scores);

// Full-dataset fitness of MMR at one blend value.
FitnessReport evaluate_mmr(const Dataset& dataset, const RelevanceTable& relevance,
                           const FitnessSpec& spec, const MmrConfig& config);

struct TuneResult {
  double best_lambda = 1.0;
  FitnessReport best_report;
  std::vector<std::pair<double, FitnessReport>> grid;
};

// Argmax of combined fitness over the grid; ties favor the larger lambda.
TuneResult tune_lambda(const Dataset& validation, const RelevanceTable& relevance,
                       const FitnessSpec& spec, std::span<const double> grid,
                       int k_rank = 10);

// 0.00, 0.05, ..., 1.00.
std::vector<double> default_lambda_grid();

}  // namespace marketrank

#endif  // MARKETRANK_BASELINES_HPP_
