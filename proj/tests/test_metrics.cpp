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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "marketrank/metrics.hpp"
#include "marketrank/synthgen.hpp"
#include "test_support.hpp"

using namespace marketrank;
using namespace marketrank::testing;

namespace {

constexpr double kTol = 1e-9;

// Cascade ERR written as an explicit product, independent of the recursion.
double err_by_product(const std::vector<int>& grades, int k) {
  double total = 0.0;
  for (int r = 1; r <= std::min<int>(k, static_cast<int>(grades.size())); ++r) {
    double reach = 1.0;
    for (int i = 1; i < r; ++i) reach *= 1.0 - (std::pow(2.0, grades[i - 1]) - 1.0) / 32.0;
    total += reach * (std::pow(2.0, grades[r - 1]) - 1.0) / 32.0 / r;
  }
  return total;
}

// Gini from the mean absolute difference of per-capita wealth.
double gini_by_mad(const MarketLedger& l) {
  const double pop = std::accumulate(l.tier_population.begin(), l.tier_population.end(), 0.0);
  const double wealth = std::accumulate(l.tier_wealth.begin(), l.tier_wealth.end(), 0.0);
  std::vector<double> x, u;
  for (std::size_t i = 0; i < l.tier_population.size(); ++i) {
    x.push_back(l.tier_population[i] / pop);
    u.push_back((l.tier_wealth[i] / wealth) / x.back());
  }
  double mean = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) mean += x[i] * u[i];
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) s += x[i] * x[j] * std::abs(u[i] - u[j]);
  }
  return s / (2.0 * mean);
}

// Smallest score v with at least p% of the scores <= v.
double nearest_rank_scan(std::vector<double> scores, double p) {
  std::sort(scores.begin(), scores.end());
  const double n = static_cast<double>(scores.size());
  for (double v : scores) {
    const double at_or_below =
        static_cast<double>(std::count_if(scores.begin(), scores.end(),
                                          [&](double s) { return s <= v; }));
    if (100.0 * at_or_below >= p * n - 1e-9) return v;
  }
  return scores.back();
}

QuerySet topical_query(const std::vector<std::pair<int, std::string>>& docs,
                       std::map<std::string, double> topics) {
  std::vector<JudgedDoc> jd;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    jd.push_back({make_doc("d" + std::to_string(i), {0.0}, {"r", docs[i].second}),
                  docs[i].first});
  }
  QuerySet q = make_query("q", std::move(jd));
  q.topic_dist = std::move(topics);
  return q;
}

MarketLedger random_ledger(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> tiers(2, 30);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const int t = tiers(rng);
  MarketLedger l;
  double pop = 0.0;
  for (int i = 0; i < t; ++i) {
    l.tier_population.push_back(0.05 + unif(rng));
    pop += l.tier_population.back();
    l.tier_wealth.push_back(unif(rng) < 0.3 ? 0.0 : std::exp(3.0 * unif(rng)));
  }
  for (double& x : l.tier_population) x /= pop;
  l.tier_wealth[0] += 1.0;
  return l;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("dcg examples") {
  CHECK(dcg_at_k(std::vector<int>{5}, 1) == 31.0);
  CHECK(std::abs(dcg_at_k(std::vector<int>{3, 2}, 2) - (7.0 + 3.0 / std::log2(3.0))) < kTol);
  CHECK(std::abs(dcg_at_k(std::vector<int>{3, 2}, 2) - 8.8928) < 1e-4);
  CHECK(dcg_at_k(std::vector<int>{}, 10) == 0.0);
  CHECK(dcg_at_k(std::vector<int>{3, 2, 5}, 2) == dcg_at_k(std::vector<int>{3, 2}, 2));
  CHECK_THROWS_AS(dcg_at_k(std::vector<int>{3}, 0), std::invalid_argument);
}

TEST_CASE("ndcg examples") {
  const QuerySet q = graded_query({2, 3});
  const Ranking as_given = identity_ranking(q);
  const double expect = (3.0 + 7.0 / std::log2(3.0)) / (7.0 + 3.0 / std::log2(3.0));
  CHECK(std::abs(ndcg_at_k(as_given, 2) - expect) < kTol);
  CHECK(std::abs(ndcg_at_k(as_given, 2) - 0.8340) < 1e-4);
  Ranking ideal{&q, ideal_order(q)};
  CHECK(ndcg_at_k(ideal, 2) == 1.0);
  const QuerySet single = graded_query({4});
  CHECK(ndcg_at_k(identity_ranking(single), 10) == 1.0);
  const QuerySet minimal = graded_query({1, 1, 1});
  CHECK(ndcg_at_k(identity_ranking(minimal), 3) == 1.0);
}

TEST_CASE("ideal ordering is maximal over every permutation of up to 6 docs") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> grade(1, 5), size(1, 6);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> grades(static_cast<std::size_t>(size(rng)));
    for (int& g : grades) g = grade(rng);
    const QuerySet q = graded_query(grades);
    const int k = static_cast<int>(grades.size());
    std::vector<std::size_t> perm(grades.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    double best = 0.0;
    do {
      best = std::max(best, ndcg_at_k(Ranking{&q, perm}, k));
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(ndcg_at_k(Ranking{&q, ideal_order(q)}, k) == 1.0);
    CHECK(best <= 1.0 + 1e-12);
  }
}

TEST_CASE("grade_to_prob examples") {
  CHECK(grade_to_prob(5, 5) == 0.96875);
  CHECK(grade_to_prob(0, 5) == 0.0);
  CHECK(grade_to_prob(3, 5) == 0.21875);
}

TEST_CASE("err examples") {
  CHECK(err_at_k(std::vector<int>{5}, 1) == 0.96875);
  CHECK(std::abs(err_at_k(std::vector<int>{5, 5}, 2) - (0.96875 + 0.03125 * 0.96875 / 2)) < kTol);
  CHECK(std::abs(err_at_k(std::vector<int>{5, 5}, 2) - 0.98389) < 1e-5);
  CHECK(err_at_k(std::vector<int>{}, 3) == 0.0);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> grade(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> g(10);
    for (int& x : g) x = grade(rng);
    CHECK(std::abs(err_at_k(g, 7) - err_by_product(g, 7)) < kTol);
  }
}

TEST_CASE("err matches a Monte-Carlo cascade simulation") {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (const std::vector<int>& grades :
       {std::vector<int>(10, 1), std::vector<int>{1, 4, 2, 5, 1, 3, 3, 2, 1, 4}}) {
    constexpr int kSamples = 1'000'000;
    double total = 0.0;
    for (int s = 0; s < kSamples; ++s) {
      for (std::size_t r = 0; r < grades.size(); ++r) {
        if (unif(rng) < grade_to_prob(grades[r])) {
          total += 1.0 / static_cast<double>(r + 1);
          break;
        }
      }
    }
    CHECK(std::abs(err_at_k(grades, 10) - total / kSamples) < 1e-3);
  }
}

TEST_CASE("swapping a higher grade earlier never lowers err") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> grade(1, 5);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<int> g(8);
    for (int& x : g) x = grade(rng);
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
      if (g[i] >= g[i + 1]) continue;
      std::vector<int> swapped = g;
      std::swap(swapped[i], swapped[i + 1]);
      CHECK(err_at_k(swapped, 8) >= err_at_k(g, 8) - 1e-15);
    }
  }
}

TEST_CASE("err_ia examples") {
  const QuerySet one = topical_query({{4, "a"}, {2, "a"}, {5, "a"}}, {{"a", 1.0}});
  const Ranking r1 = identity_ranking(one);
  CHECK(std::abs(err_ia_at_k(r1, 3) - err_at_k(r1.grades(3), 3)) < kTol);

  const QuerySet half = topical_query({{4, "a"}, {3, "a"}}, {{"a", 0.5}, {"b", 0.5}});
  const Ranking r2 = identity_ranking(half);
  CHECK(std::abs(err_ia_at_k(r2, 2) - 0.5 * err_at_k(r2.grades(2), 2)) < kTol);

  const QuerySet three = topical_query({{3, "a"}, {5, "b"}, {2, "a"}, {4, "c"}, {1, "b"}},
                                       {{"a", 0.5}, {"b", 0.3}, {"c", 0.2}});
  const Ranking r3 = identity_ranking(three);
  const double e_a = err_by_product({3, 0, 2, 0, 0}, 5);
  const double e_b = err_by_product({0, 5, 0, 0, 1}, 5);
  const double e_c = err_by_product({0, 0, 0, 4, 0}, 5);
  CHECK(std::abs(err_ia_at_k(r3, 5) - (0.5 * e_a + 0.3 * e_b + 0.2 * e_c)) < kTol);
  const double e_a3 = err_by_product({3, 0, 2}, 3);
  const double e_b3 = err_by_product({0, 5, 0}, 3);
  CHECK(std::abs(err_ia_at_k(r3, 3) - (0.5 * e_a3 + 0.3 * e_b3)) < kTol);
}

TEST_CASE("weighted importance examples") {
  const std::vector<std::pair<double, double>> equal = {{1, 0.2}, {1, 0.4}, {1, 0.9}};
  CHECK(std::abs(weighted_importance(equal) - 0.5) < kTol);
  const std::vector<std::pair<double, double>> zero = {{1, 0.3}, {0, 0.9}};
  CHECK(weighted_importance(zero) == 0.3);
  const std::vector<std::pair<double, double>> two = {{2, 0.6}, {1, 0.3}};
  CHECK(std::abs(weighted_importance(two) - 0.5) < kTol);
  const std::vector<std::pair<double, double>> none = {{0, 0.6}, {0, 0.3}};
  CHECK_THROWS_AS(weighted_importance(none), std::invalid_argument);
}

TEST_CASE("percentile examples and order-statistic oracle") {
  const std::vector<double> c(7, 0.42);
  const std::vector<double> any = {10, 50, 99};
  CHECK(percentile_aggregate(c, any) == 0.42);
  std::vector<double> tenths;
  for (int i = 1; i <= 10; ++i) tenths.push_back(i / 10.0);
  const std::vector<double> fifty = {50};
  CHECK(percentile_aggregate(tenths, fifty) == 0.5);
  CHECK(nearest_rank_scan(tenths, 50) == 0.5);
  const std::vector<double> four = {1, 2, 3, 4};
  const std::vector<double> quart = {25, 75};
  CHECK(percentile_aggregate(four, quart) == 2.0);

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<int> size(1, 40), pct(1, 100);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> s(static_cast<std::size_t>(size(rng)));
    for (double& x : s) x = unif(rng);
    const std::vector<double> ps = {static_cast<double>(pct(rng)), static_cast<double>(pct(rng))};
    const double expect = 0.5 * (nearest_rank_scan(s, ps[0]) + nearest_rank_scan(s, ps[1]));
    const double got = percentile_aggregate(s, ps);
    CHECK(std::abs(got - expect) < kTol);
    CHECK(got >= *std::min_element(s.begin(), s.end()));
    CHECK(got <= *std::max_element(s.begin(), s.end()));
  }
}

TEST_CASE("incentive examples") {
  auto premium_query = [](std::vector<bool> flags, std::string id) {
    std::vector<JudgedDoc> docs;
    for (std::size_t i = 0; i < flags.size(); ++i) {
      docs.push_back({make_doc("d" + std::to_string(i), {0}, {"leaf"}, 1, 1.0, flags[i]), 3});
    }
    return make_query(std::move(id), std::move(docs));
  };
  const QuerySet a = premium_query({true, false, true}, "a");
  const QuerySet b = premium_query({true, true}, "b");
  const std::vector<Ranking> mixed = {identity_ranking(a), identity_ranking(b)};
  CHECK(incentive_score(mixed, 2) == 0.75);
  const QuerySet all = premium_query({true, true, true}, "c");
  const std::vector<Ranking> full = {identity_ranking(all)};
  CHECK(incentive_score(full, 3) == 1.0);
  const QuerySet none = premium_query({false, false}, "d");
  const std::vector<Ranking> empty = {identity_ranking(none)};
  CHECK(incentive_score(empty, 2) == 0.0);
  // Short lists still divide by k.
  CHECK(incentive_score(full, 6) == 0.5);
}

TEST_CASE("ledger examples") {
  auto tier_query = [](std::vector<int> tiers, double purchases, std::string id) {
    std::vector<JudgedDoc> docs;
    for (std::size_t i = 0; i < tiers.size(); ++i) {
      docs.push_back({make_doc("d" + std::to_string(i), {0}, {"leaf"}, tiers[i]), 3});
    }
    return make_query(std::move(id), std::move(docs), purchases);
  };
  const std::vector<double> pop = uniform_tier_population(20);
  const QuerySet a = tier_query({7, 1}, 2.0, "a"), b = tier_query({7}, 5.0, "b");
  const std::vector<Ranking> sevens = {identity_ranking(a), identity_ranking(b)};
  const MarketLedger l7 = build_ledger(sevens, pop, 1);
  for (std::size_t t = 0; t < 20; ++t) CHECK(l7.tier_wealth[t] == (t == 6 ? 7.0 : 0.0));
  CHECK(l7.tier_population == pop);

  const QuerySet c = tier_query({1}, 3.0, "c"), d = tier_query({2}, 1.0, "d");
  const std::vector<Ranking> two = {identity_ranking(c), identity_ranking(d)};
  const MarketLedger l2 = build_ledger(two, pop, 1);
  CHECK(l2.tier_wealth[0] == 3.0);
  CHECK(l2.tier_wealth[1] == 1.0);
  CHECK(std::accumulate(l2.tier_wealth.begin(), l2.tier_wealth.end(), 0.0) == 4.0);
  // Position 2 skips the one-doc rankings.
  const MarketLedger p2 = build_ledger(sevens, pop, 2);
  CHECK(p2.tier_wealth[0] == 2.0);
  CHECK(std::accumulate(p2.tier_wealth.begin(), p2.tier_wealth.end(), 0.0) == 2.0);
}

TEST_CASE("ledger under a popularity sort matches an independent tally") {
  GenConfig cfg;
  cfg.num_queries = 100;
  cfg.docs_per_query = 20;
  const Dataset data = generate(cfg);
  std::vector<Ranking> rankings;
  for (const auto& q : data.queries) {
    Ranking r = identity_ranking(q);
    std::stable_sort(r.order.begin(), r.order.end(), [&](std::size_t x, std::size_t y) {
      return q.judged_docs[x].doc.features[0] > q.judged_docs[y].doc.features[0];
    });
    rankings.push_back(std::move(r));
  }
  for (int pos : {1, 3}) {
    std::vector<double> tally(20, 0.0);
    for (const auto& q : data.queries) {
      std::vector<std::pair<double, std::size_t>> by_f0;
      for (std::size_t i = 0; i < q.size(); ++i) by_f0.push_back({q.judged_docs[i].doc.features[0], i});
      std::sort(by_f0.begin(), by_f0.end(), [](auto& x, auto& y) {
        return x.first != y.first ? x.first > y.first : x.second < y.second;
      });
      const std::size_t pick = by_f0[static_cast<std::size_t>(pos - 1)].second;
      tally[static_cast<std::size_t>(q.judged_docs[pick].doc.seller_tier - 1)] += q.purchase_count;
    }
    const MarketLedger l = build_ledger(rankings, data, pos);
    for (std::size_t t = 0; t < 20; ++t) CHECK(l.tier_wealth[t] == doctest::Approx(tally[t]).epsilon(1e-12));
  }
}

TEST_CASE("gini examples against the trapezoid and MAD oracles") {
  MarketLedger proportional{{0.2, 0.3, 0.5}, {2.0, 3.0, 5.0}};
  CHECK(std::abs(gini_score(proportional).gini) < kTol);
  CHECK(std::abs(gini_score(proportional).score - 1.0) < kTol);

  MarketLedger halves{{0.5, 0.5}, {0.0, 1.0}};
  CHECK(std::abs(gini_score(halves).gini - 0.5) < kTol);
  CHECK(std::abs(gini_by_mad(halves) - 0.5) < kTol);
  CHECK(std::abs(gini_score(halves).score - 0.5) < kTol);

  MarketLedger one_tier{uniform_tier_population(20), std::vector<double>(20, 0.0)};
  one_tier.tier_wealth[13] = 4.0;
  CHECK(std::abs(gini_score(one_tier).gini - 0.95) < kTol);
  CHECK(std::abs(gini_by_mad(one_tier) - 0.95) < kTol);
  CHECK(std::abs(gini_score(one_tier).score - 0.05) < kTol);

  MarketLedger broke{{0.5, 0.5}, {0.0, 0.0}};
  CHECK_THROWS_AS(gini_score(broke), ZeroWealthError);
}

TEST_CASE("trapezoid gini equals the MAD gini on 1000 random ledgers") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const MarketLedger l = random_ledger(rng);
    CHECK(std::abs(gini_score(l).gini - gini_by_mad(l)) < kTol);
  }
}

TEST_CASE("gini is invariant to wealth scale and tier order") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const MarketLedger l = random_ledger(rng);
    MarketLedger scaled = l;
    for (double& w : scaled.tier_wealth) w *= 37.5;
    CHECK(std::abs(gini_score(scaled).gini - gini_score(l).gini) < kTol);
    MarketLedger shuffled = l;
    std::vector<std::size_t> perm(l.tier_population.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t i = 0; i < perm.size(); ++i) {
      shuffled.tier_population[i] = l.tier_population[perm[i]];
      shuffled.tier_wealth[i] = l.tier_wealth[perm[i]];
    }
    CHECK(std::abs(gini_score(shuffled).gini - gini_score(l).gini) < kTol);
    const GiniResult g = gini_score(l);
    CHECK(g.gini >= 0.0);
    CHECK(g.gini < 1.0);
    CHECK(g.score == 1.0 - g.gini);
  }
}

TEST_CASE("lorenz curve runs from the origin to (1,1) and is convex") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto curve = lorenz_curve(random_ledger(rng));
    CHECK(curve.front().population == 0.0);
    CHECK(curve.front().wealth == 0.0);
    CHECK(curve.back().population == 1.0);
    CHECK(curve.back().wealth == 1.0);
    for (std::size_t i = 1; i < curve.size(); ++i) {
      CHECK(curve[i].population >= curve[i - 1].population);
      CHECK(curve[i].wealth <= curve[i].population + 1e-12);
    }
  }
}

TEST_CASE("observation-weighted gini") {
  auto tiers_query = [](std::vector<int> tiers, double purchases, std::string id) {
    std::vector<JudgedDoc> docs;
    for (std::size_t i = 0; i < tiers.size(); ++i) {
      docs.push_back({make_doc("d" + std::to_string(i), {0}, {"leaf"}, tiers[i]), 3});
    }
    return make_query(std::move(id), std::move(docs), purchases);
  };
  Dataset d = wrap_dataset({tiers_query({1, 2, 1}, 3.0, "a"), tiers_query({2, 2, 1}, 1.0, "b"),
                            tiers_query({1, 1, 2}, 2.0, "c")},
                           1, {"leaf"}, 2);
  std::vector<Ranking> rankings;
  for (const auto& q : d.queries) rankings.push_back(identity_ranking(q));
  const std::vector<int> first = {1};
  CHECK(std::abs(observation_weighted_gini(rankings, d, first) -
                 gini_score(build_ledger(rankings, d, 1)).score) < kTol);

  // Hand expansion: ledgers per position over tiers (1, 2).
  // pos1: (5, 1), pos2: (2, 4), pos3: (4, 2).
  auto two_tier = [](double a, double b) {
    return gini_score(MarketLedger{{0.5, 0.5}, {a, b}}).score;
  };
  const double s1 = two_tier(5, 1), s2 = two_tier(2, 4), s3 = two_tier(4, 2);
  const std::vector<int> three = {1, 2, 3};
  const double o1 = d.observation(1), o2 = d.observation(2), o3 = d.observation(3);
  const double expect = (o1 * s1 + o2 * s2 + o3 * s3) / (o1 + o2 + o3);
  CHECK(std::abs(observation_weighted_gini(rankings, d, three) - expect) < kTol);
  // Same ledger everywhere.
  Dataset same = wrap_dataset({tiers_query({1, 1, 1}, 3.0, "a"), tiers_query({2, 2, 2}, 1.0, "b")},
                              1, {"leaf"}, 2);
  std::vector<Ranking> rs;
  for (const auto& q : same.queries) rs.push_back(identity_ranking(q));
  CHECK(std::abs(observation_weighted_gini(rs, same, three) - two_tier(3, 1)) < kTol);
}

TEST_CASE("chi-square uniformity examples") {
  auto cat_query = [](std::vector<std::string> leaves, std::string id) {
    std::vector<JudgedDoc> docs;
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      docs.push_back({make_doc("d" + std::to_string(i), {0}, {"r", leaves[i]}), 3});
    }
    return make_query(std::move(id), std::move(docs));
  };
  const std::vector<std::string> cats = {"A", "B"};
  const QuerySet q1 = cat_query({"A", "B"}, "1"), q2 = cat_query({"A", "A"}, "2");
  const std::vector<Ranking> both_a = {identity_ranking(q1), identity_ranking(q2)};
  CHECK(std::abs(chi2_uniformity(both_a, 1, cats) - 1.0 / 3.0) < kTol);
  const QuerySet q3 = cat_query({"B", "A"}, "3");
  const std::vector<Ranking> uniform = {identity_ranking(q1), identity_ranking(q3)};
  CHECK(chi2_uniformity(uniform, 1, cats) == 1.0);
  // k = 2: counts A=3, B=1 against 2 each, chi2 = 1.
  CHECK(std::abs(chi2_uniformity(both_a, 2, cats) - 0.5) < kTol);
  const std::vector<std::string> only_b = {"B"};
  CHECK_THROWS(chi2_uniformity(both_a, 1, only_b));
}

TEST_CASE("all metrics stay in [0,1] on random rankings") {
  GenConfig cfg;
  cfg.num_queries = 60;
  cfg.docs_per_query = 25;
  cfg.seed = 5;
  const Dataset data = generate(cfg);
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Ranking> rankings;
    for (const auto& q : data.queries) {
      Ranking r = identity_ranking(q);
      std::shuffle(r.order.begin(), r.order.end(), rng);
      r.order.resize(10);
      rankings.push_back(std::move(r));
    }
    for (const auto& r : rankings) {
      for (double v : {ndcg_at_k(r, 10), err_at_k(r.grades(10), 10), err_ia_at_k(r, 10)}) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
      }
    }
    const double inc = incentive_score(rankings, 10);
    const double gs = gini_score(build_ledger(rankings, data, 1)).score;
    const double chi = chi2_uniformity(rankings, 10, data.categories);
    for (double v : {inc, gs}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    CHECK(chi > 0.0);
    CHECK(chi <= 1.0);
  }
}

}  // TEST_SUITE
