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

#include "marketrank/fitness.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <set>
#include <stdexcept>

#include "marketrank/metrics.hpp"
#include "marketrank/util.hpp"

namespace marketrank {

std::string metric_name(MetricId id) {
  switch (id) {
    case MetricId::kNdcg: return "ndcg";
    case MetricId::kErr: return "err";
    case MetricId::kErrIa: return "err_ia";
    case MetricId::kGini: return "gini_score";
    case MetricId::kIncentive: return "incentive";
    case MetricId::kChi2: return "chi2";
  }
  return "unknown";
}

std::optional<MetricId> parse_metric(const std::string& name) {
  for (MetricId id : {MetricId::kNdcg, MetricId::kErr, MetricId::kErrIa, MetricId::kGini,
                      MetricId::kIncentive, MetricId::kChi2}) {
    if (metric_name(id) == name) return id;
  }
  if (name == "gini") return MetricId::kGini;
  return std::nullopt;
}

bool is_market_metric(MetricId id) {
  return id == MetricId::kGini || id == MetricId::kIncentive || id == MetricId::kChi2;
}

void validate_spec(const FitnessSpec& spec) {
  if (spec.terms.empty()) throw std::invalid_argument("fitness spec has no terms");
  std::set<MetricId> seen;
  bool positive = false;
  for (const auto& t : spec.terms) {
    if (!(t.weight >= 0.0) || !std::isfinite(t.weight)) {
      throw std::invalid_argument("weight of " + metric_name(t.metric) + " must be >= 0");
    }
    if (t.k < 1) throw std::invalid_argument("k of " + metric_name(t.metric) + " must be >= 1");
    if (!seen.insert(t.metric).second) {
      throw std::invalid_argument("metric " + metric_name(t.metric) + " listed twice");
    }
    positive |= t.weight > 0.0;
  }
  if (!positive) throw std::invalid_argument("fitness spec needs a positive weight");
  for (double p : spec.percentiles) {
    if (!(p > 0.0 && p <= 100.0)) throw std::invalid_argument("percentiles must lie in (0, 100]");
  }
  if (spec.gini_position < 1) throw std::invalid_argument("gini_position must be >= 1");
}

double combine(const FitnessSpec& spec, const std::map<std::string, double>& per_metric) {
  double num = 0.0, den = 0.0;
  for (const auto& t : spec.terms) {
    if (t.weight == 0.0) continue;
    num += t.weight * per_metric.at(metric_name(t.metric));
    den += t.weight;
  }
  return num / den;
}

FitnessReport score_rankings(std::span<const Ranking> rankings, const Dataset& dataset,
                             const FitnessSpec& spec) {
  validate_spec(spec);
  if (rankings.empty()) throw std::invalid_argument("fitness batch is empty");
  FitnessReport report;
  report.batch_query_ids.reserve(rankings.size());
  for (const auto& r : rankings) report.batch_query_ids.push_back(r.query_id());

  std::vector<double> per_query(rankings.size());
  std::vector<std::pair<double, double>> weighted(rankings.size());
  for (const auto& term : spec.terms) {
    double value = 0.0;
    switch (term.metric) {
      case MetricId::kNdcg:
      case MetricId::kErr:
      case MetricId::kErrIa: {
        for (std::size_t i = 0; i < rankings.size(); ++i) {
          const Ranking& r = rankings[i];
          if (term.metric == MetricId::kNdcg) {
            per_query[i] = ndcg_at_k(r, term.k);
          } else if (term.metric == MetricId::kErr) {
            const auto g = r.grades(static_cast<std::size_t>(term.k));
            per_query[i] = err_at_k(g, term.k);
          } else {
            per_query[i] = err_ia_at_k(r, term.k);
          }
        }
        if (!spec.percentiles.empty()) {
          value = percentile_aggregate(per_query, spec.percentiles);
        } else if (spec.use_traffic_weighting) {
          for (std::size_t i = 0; i < rankings.size(); ++i) {
            weighted[i] = {rankings[i].query->traffic_weight, per_query[i]};
          }
          value = weighted_importance(weighted);
        } else {
          double sum = 0.0;
          for (double s : per_query) sum += s;
          value = sum / static_cast<double>(per_query.size());
        }
        break;
      }
      case MetricId::kGini: {
        try {
          value = gini_score(build_ledger(rankings, dataset, spec.gini_position)).score;
        } catch (const ZeroWealthError&) {
          log_warning("batch has zero wealth at gini position; scoring gini as 1.0");
          value = 1.0;
        }
        break;
      }
      case MetricId::kIncentive:
        value = incentive_score(rankings, term.k);
        break;
      case MetricId::kChi2:
        value = chi2_uniformity(rankings, term.k, dataset.categories);
        break;
    }
    report.per_metric[metric_name(term.metric)] = value;
  }
  report.combined = combine(spec, report.per_metric);
  return report;
}

FitnessReport evaluate_fitness(const RankFn& rank_fn, std::span<const QuerySet> queries,
                               const Dataset& dataset, const FitnessSpec& spec) {
  if (queries.empty()) throw std::invalid_argument("fitness batch is empty");
  std::vector<Ranking> rankings;
  rankings.reserve(queries.size());
  for (const auto& q : queries) rankings.push_back(rank_fn(q));
  return score_rankings(rankings, dataset, spec);
}

QuerySet subsample_documents(const QuerySet& query, int m, Rng& rng) {
  if (m < 1) throw std::invalid_argument("subsample size must be >= 1");
  if (static_cast<std::size_t>(m) >= query.judged_docs.size()) return query;
  QuerySet out;
  out.query_id = query.query_id;
  out.traffic_weight = query.traffic_weight;
  out.purchase_count = query.purchase_count;
  out.topic_dist = query.topic_dist;
  out.judged_docs.reserve(static_cast<std::size_t>(m));
  std::sample(query.judged_docs.begin(), query.judged_docs.end(),
              std::back_inserter(out.judged_docs), m, rng);
  return out;
}

std::vector<const QuerySet*> sample_batch(const Dataset& dataset, int batch_size, Rng& rng) {
  if (batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
  std::vector<const QuerySet*> all;
  all.reserve(dataset.queries.size());
  for (const auto& q : dataset.queries) all.push_back(&q);
  if (static_cast<std::size_t>(batch_size) >= all.size()) return all;
  std::vector<const QuerySet*> out;
  out.reserve(static_cast<std::size_t>(batch_size));
  std::sample(all.begin(), all.end(), std::back_inserter(out), batch_size, rng);
  return out;
}

}  // namespace marketrank
