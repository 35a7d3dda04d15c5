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

#include "marketrank/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace marketrank {

namespace {

double gain(int grade) { return std::ldexp(1.0, grade) - 1.0; }

std::size_t depth(int k, std::size_t n) {
  if (k < 1) throw std::invalid_argument("cutoff k must be >= 1");
  return std::min(static_cast<std::size_t>(k), n);
}

}  // namespace

double dcg_at_k(std::span<const int> grades, int k) {
  const std::size_t n = depth(k, grades.size());
  double dcg = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    dcg += gain(grades[j]) / std::log2(static_cast<double>(j) + 2.0);
  }
  return dcg;
}

double ndcg_at_k(const Ranking& ranking, int k) {
  const QuerySet& q = *ranking.query;
  const std::vector<int> got = ranking.grades(static_cast<std::size_t>(std::max(k, 0)));
  std::vector<int> ideal(q.judged_docs.size());
  std::transform(q.judged_docs.begin(), q.judged_docs.end(), ideal.begin(),
                 [](const JudgedDoc& jd) { return jd.grade; });
  std::sort(ideal.begin(), ideal.end(), std::greater<>());
  const double idcg = dcg_at_k(ideal, k);
  if (idcg <= 0.0) return 1.0;
  return dcg_at_k(got, k) / idcg;
}

double grade_to_prob(int grade, int max_grade) {
  return gain(grade) / std::ldexp(1.0, max_grade);
}

double err_at_k(std::span<const int> grades, int k, int max_grade) {
  const std::size_t n = depth(k, grades.size());
  double err = 0.0;
  double still_looking = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double r = grade_to_prob(grades[j], max_grade);
    err += still_looking * r / static_cast<double>(j + 1);
    still_looking *= 1.0 - r;
  }
  return err;
}

double err_ia_at_k(const Ranking& ranking, int k, int max_grade) {
  const std::size_t n = depth(k, ranking.size());
  std::vector<int> masked(n);
  double total = 0.0;
  for (const auto& [topic, p] : ranking.query->topic_dist) {
    if (p <= 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const JudgedDoc& jd = ranking.at(j);
      masked[j] = jd.doc.leaf() == topic ? jd.grade : 0;
    }
    total += p * err_at_k(masked, k, max_grade);
  }
  return total;
}

double weighted_importance(std::span<const std::pair<double, double>> weighted_scores) {
  double num = 0.0, den = 0.0;
  for (const auto& [w, s] : weighted_scores) {
    if (!(w >= 0.0)) throw std::invalid_argument("importance weights must be >= 0");
    num += w * s;
    den += w;
  }
  if (!(den > 0.0)) throw std::invalid_argument("importance weights are all zero");
  return num / den;
}

double percentile_aggregate(std::span<const double> scores,
                            std::span<const double> percentiles) {
  if (scores.empty()) throw std::invalid_argument("percentile_aggregate: no scores");
  if (percentiles.empty()) throw std::invalid_argument("percentile_aggregate: no percentiles");
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double sum = 0.0;
  for (double p : percentiles) {
    if (!(p > 0.0 && p <= 100.0)) {
      throw std::invalid_argument("percentiles must lie in (0, 100]");
    }
    // Nearest rank: the ceil(p/100 * n)-th order statistic. The epsilon
    // absorbs representation error such as 0.29 * 100.
    auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * n - 1e-9));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    sum += sorted[rank - 1];
  }
  return sum / static_cast<double>(percentiles.size());
}

double incentive_score(std::span<const Ranking> rankings, int k) {
  if (rankings.empty()) return 0.0;
  double hits = 0.0;
  for (const auto& r : rankings) {
    const std::size_t n = depth(k, r.size());
    for (std::size_t p = 0; p < n; ++p) hits += r.at(p).doc.premium ? 1.0 : 0.0;
  }
  return hits / (static_cast<double>(k) * static_cast<double>(rankings.size()));
}

MarketLedger build_ledger(std::span<const Ranking> rankings,
                          std::span<const double> tier_population, int position) {
  if (position < 1) throw std::invalid_argument("ledger position must be >= 1");
  MarketLedger ledger;
  ledger.tier_population.assign(tier_population.begin(), tier_population.end());
  ledger.tier_wealth.assign(tier_population.size(), 0.0);
  const auto pos0 = static_cast<std::size_t>(position - 1);
  for (const auto& r : rankings) {
    if (r.size() <= pos0) continue;
    const int tier = r.at(pos0).doc.seller_tier;
    if (tier < 1 || static_cast<std::size_t>(tier) > ledger.tier_wealth.size()) {
      throw std::out_of_range("seller tier " + std::to_string(tier) + " outside ledger");
    }
    ledger.tier_wealth[static_cast<std::size_t>(tier - 1)] += r.query->purchase_count;
  }
  return ledger;
}

MarketLedger build_ledger(std::span<const Ranking> rankings, const Dataset& dataset,
                          int position) {
  return build_ledger(rankings, dataset.tier_population, position);
}

std::vector<LorenzPoint> lorenz_curve(const MarketLedger& ledger) {
  const std::size_t t = ledger.tier_population.size();
  if (ledger.tier_wealth.size() != t) {
    throw std::invalid_argument("ledger population and wealth lengths differ");
  }
  double total_pop = 0.0, total_wealth = 0.0;
  for (std::size_t i = 0; i < t; ++i) {
    total_pop += ledger.tier_population[i];
    total_wealth += ledger.tier_wealth[i];
  }
  if (!(total_wealth > 0.0)) throw ZeroWealthError("ledger has zero total wealth");
  if (!(total_pop > 0.0)) throw std::invalid_argument("ledger has zero population");

  auto ratio = [&](std::size_t i) {
    const double x = ledger.tier_population[i];
    if (x > 0.0) return ledger.tier_wealth[i] / x;
    return ledger.tier_wealth[i] > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  };
  std::vector<std::size_t> order(t);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return ratio(a) < ratio(b); });

  std::vector<LorenzPoint> curve;
  curve.reserve(t + 1);
  curve.push_back({0.0, 0.0});
  double cx = 0.0, cw = 0.0;
  for (std::size_t i : order) {
    cx += ledger.tier_population[i] / total_pop;
    cw += ledger.tier_wealth[i] / total_wealth;
    curve.push_back({cx, cw});
  }
  // Pin the endpoint against accumulated rounding.
  curve.back() = {1.0, 1.0};
  return curve;
}

GiniResult gini_score(const MarketLedger& ledger) {
  const auto curve = lorenz_curve(ledger);
  double area2 = 0.0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    area2 += (curve[i].population - curve[i - 1].population) *
             (curve[i].wealth + curve[i - 1].wealth);
  }
  GiniResult r;
  r.gini = std::clamp(1.0 - area2, 0.0, 1.0);
  r.score = 1.0 - r.gini;
  return r;
}

double observation_weighted_gini(std::span<const Ranking> rankings,
                                 const Dataset& dataset,
                                 std::span<const int> positions) {
  double num = 0.0, den = 0.0;
  for (int p : positions) {
    const double o = dataset.observation(p);
    if (o <= 0.0) continue;
    num += o * gini_score(build_ledger(rankings, dataset, p)).score;
    den += o;
  }
  if (!(den > 0.0)) {
    throw std::invalid_argument("positions carry no observation probability");
  }
  return num / den;
}

double chi2_uniformity(std::span<const Ranking> rankings, int k,
                       std::span<const std::string> categories,
                       const CategoryOf& category_of) {
  if (categories.empty()) throw std::invalid_argument("chi2_uniformity: no categories");
  std::map<std::string, double> counts;
  for (const auto& c : categories) counts[c] = 0.0;
  for (const auto& r : rankings) {
    const std::size_t n = depth(k, r.size());
    for (std::size_t p = 0; p < n; ++p) {
      const Document& doc = r.at(p).doc;
      const std::string& cat = category_of ? category_of(doc) : doc.leaf();
      auto it = counts.find(cat);
      if (it == counts.end()) {
        throw std::invalid_argument("category '" + cat + "' not in category set");
      }
      it->second += 1.0;
    }
  }
  const double expected = static_cast<double>(k) * static_cast<double>(rankings.size()) /
                          static_cast<double>(counts.size());
  if (!(expected > 0.0)) return 1.0;
  double chi2 = 0.0;
  for (const auto& [cat, observed] : counts) {
    chi2 += (observed - expected) * (observed - expected) / expected;
  }
  return 1.0 / (1.0 + chi2);
}

}  // namespace marketrank
