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

// Relevance (NDCG, ERR), intent-aware diversity (ERR-IA) and market-level
// indicators (importance weighting, percentile aggregation, incentives,
// Gini equality, chi-square uniformity). All functions are pure.

#ifndef MARKETRANK_METRICS_HPP_
#define MARKETRANK_METRICS_HPP_

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "marketrank/corpus.hpp"
#include "marketrank/ranking.hpp"

namespace marketrank {

double dcg_at_k(std::span<const int> grades, int k);

// DCG over IDCG; 1.0 when IDCG is 0. The ideal order is taken over the
// ranking's own query (which may be a subsample).
double ndcg_at_k(const Ranking& ranking, int k);

// (2^grade - 1) / 2^max_grade.
double grade_to_prob(int grade, int max_grade = kMaxGrade);

// Cascade-model expected reciprocal rank.
double err_at_k(std::span<const int> grades, int k, int max_grade = kMaxGrade);

// Sum over topics of Pr(t|q) * ERR of the topic-masked grade list.
double err_ia_at_k(const Ranking& ranking, int k, int max_grade = kMaxGrade);

// Sum W_i s_i / Sum W_i over (weight, score) pairs. Throws
// std::invalid_argument if no weight is positive.
double weighted_importance(std::span<const std::pair<double, double>> weighted_scores);

// Mean of nearest-rank percentile values. Throws on empty input.
double percentile_aggregate(std::span<const double> scores,
                            std::span<const double> percentiles);

// Fraction of the k * |Q| top slots held by premium docs.
double incentive_score(std::span<const Ranking> rankings, int k);

struct MarketLedger {
  std::vector<double> tier_population;
  std::vector<double> tier_wealth;
};

// Wealth per tier = purchases of queries whose doc at `position` (1-based)
// belongs to that tier. Rankings shorter than `position` are skipped.
MarketLedger build_ledger(std::span<const Ranking> rankings,
                          std::span<const double> tier_population, int position);
MarketLedger build_ledger(std::span<const Ranking> rankings, const Dataset& dataset,
                          int position);

struct GiniResult {
  double gini = 0.0;
  double score = 1.0;  // 1 - gini
};

// Raised when a ledger has no wealth to distribute.
class ZeroWealthError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

GiniResult gini_score(const MarketLedger& ledger);

struct LorenzPoint {
  double population = 0.0;
  double wealth = 0.0;
};

// Cumulative (population, wealth) shares sorted by wealth/population,
// starting at the origin and ending at (1, 1).
std::vector<LorenzPoint> lorenz_curve(const MarketLedger& ledger);

// O-weighted average of the per-position equality scores.
double observation_weighted_gini(std::span<const Ranking> rankings,
                                 const Dataset& dataset,
                                 std::span<const int> positions);

using CategoryOf = std::function<const std::string&(const Document&)>;

// 1 / (1 + chi2) of top-k category counts against a uniform expectation of
// k * |Q| / |C| per category.
double chi2_uniformity(std::span<const Ranking> rankings, int k,
                       std::span<const std::string> categories,
                       const CategoryOf& category_of = {});

}  // namespace marketrank

#endif  // MARKETRANK_METRICS_HPP_
