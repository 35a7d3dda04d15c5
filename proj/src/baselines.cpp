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

#include "marketrank/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace marketrank {

double jaccard_similarity(const Document& a, const Document& b) {
  const std::set<std::string> na(a.taxonomy_path.begin(), a.taxonomy_path.end());
  const std::set<std::string> nb(b.taxonomy_path.begin(), b.taxonomy_path.end());
  if (na.empty() && nb.empty()) return 1.0;
  std::size_t common = 0;
  for (const auto& n : na) common += nb.count(n);
  return static_cast<double>(common) / static_cast<double>(na.size() + nb.size() - common);
}

Ranking mmr_rank(std::span<const double> scores, const QuerySet& query,
                 const MmrConfig& config) {
  const std::size_t n = query.judged_docs.size();
  if (scores.size() != n) throw std::invalid_argument("mmr_rank: one score per doc required");
  if (!(config.blend_lambda >= 0.0 && config.blend_lambda <= 1.0)) {
    throw std::invalid_argument("blend_lambda must be in [0, 1]");
  }
  if (config.k_rank < 1) throw std::invalid_argument("k_rank must be >= 1");
  const std::size_t k = std::min(static_cast<std::size_t>(config.k_rank), n);
  const double lambda = config.blend_lambda;

  Ranking out{&query, {}};
  out.order.reserve(k);
  std::vector<bool> taken(n, false);
  // Running max similarity of each candidate to the selected set.
  std::vector<double> max_sim(n, 0.0);
  for (std::size_t step = 0; step < k; ++step) {
    std::size_t best = n;
    double best_v = -std::numeric_limits<double>::infinity();
    for (std::size_t d = 0; d < n; ++d) {
      if (taken[d]) continue;
      const double v = step == 0 ? scores[d] : lambda * scores[d] - (1.0 - lambda) * max_sim[d];
      const bool wins = best == n || v > best_v ||
                        (v == best_v &&
                         query.judged_docs[d].doc.doc_id < query.judged_docs[best].doc.doc_id);
      if (wins) {
        best = d;
        best_v = v;
      }
    }
    taken[best] = true;
    out.order.push_back(best);
    for (std::size_t d = 0; d < n; ++d) {
      if (!taken[d]) {
        max_sim[d] = std::max(max_sim[d], jaccard_similarity(query.judged_docs[d].doc,
                                                             query.judged_docs[best].doc));
      }
    }
  }
  return out;
}

void min_max_normalize(std::vector<double>& scores) {
  if (scores.empty()) return;
  const auto [lo, hi] = std::minmax_element(scores.begin(), scores.end());
  const double mn = *lo, mx = *hi;
  if (!(mx > mn)) {
    std::fill(scores.begin(), scores.end(), 1.0);
    return;
  }
  for (double& s : scores) s = (s - mn) / (mx - mn);
}

RelevanceTable grade_oracle_scores(const Dataset& dataset) {
  RelevanceTable table;
  for (const auto& q : dataset.queries) {
    std::vector<double> s;
    s.reserve(q.judged_docs.size());
    for (const auto& jd : q.judged_docs) s.push_back(static_cast<double>(jd.grade));
    min_max_normalize(s);
    table[q.query_id] = std::move(s);
  }
  return table;
}

RelevanceTable checkpoint_scores(const Dataset& dataset, const Checkpoint& checkpoint) {
  if (checkpoint.config.stochastic()) {
    throw std::invalid_argument("relevance checkpoint must use a static value function");
  }
  check_layout(checkpoint.params, checkpoint.config);
  if (checkpoint.config.feature_dim != dataset.feature_dim) {
    throw std::invalid_argument("relevance checkpoint feature_dim differs from dataset");
  }
  RelevanceTable table;
  Rng unused(0);
  for (const auto& q : dataset.queries) {
    auto s = pointwise_scores(checkpoint.params, checkpoint.config, q, unused);
    min_max_normalize(s);
    table[q.query_id] = std::move(s);
  }
  return table;
}

RelevanceTable relevance_scores(const Dataset& dataset, const std::string& source) {
  if (source == "grade_oracle") return grade_oracle_scores(dataset);
  return checkpoint_scores(dataset, load_checkpoint(source));
}

FitnessReport evaluate_mmr(const Dataset& dataset, const RelevanceTable& relevance,
                           const FitnessSpec& spec, const MmrConfig& config) {
  std::vector<Ranking> rankings;
  rankings.reserve(dataset.queries.size());
  for (const auto& q : dataset.queries) {
    auto it = relevance.find(q.query_id);
    if (it == relevance.end()) {
      throw std::invalid_argument("no relevance scores for query " + q.query_id);
    }
    rankings.push_back(mmr_rank(it->second, q, config));
  }
  return score_rankings(rankings, dataset, spec);
}

TuneResult tune_lambda(const Dataset& validation, const RelevanceTable& relevance,
                       const FitnessSpec& spec, std::span<const double> grid, int k_rank) {
  if (grid.empty()) throw std::invalid_argument("lambda grid is empty");
  TuneResult result;
  bool have = false;
  for (double lambda : grid) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
      throw std::invalid_argument("lambda grid values must be in [0, 1]");
    }
    FitnessReport rep = evaluate_mmr(validation, relevance, spec, {lambda, k_rank});
    const bool wins = !have || rep.combined > result.best_report.combined ||
                      (rep.combined == result.best_report.combined && lambda > result.best_lambda);
    if (wins) {
      result.best_lambda = lambda;
      result.best_report = rep;
      have = true;
    }
    result.grid.emplace_back(lambda, std::move(rep));
  }
  return result;
}

std::vector<double> default_lambda_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(i * 0.05);
  return grid;
}

}  // namespace marketrank
