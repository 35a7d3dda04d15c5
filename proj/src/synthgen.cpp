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

#include "marketrank/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "marketrank/random.hpp"
#include "marketrank/util.hpp"

namespace marketrank {

namespace {

// Leaves are grouped 7 per mid-level node, mid-level nodes 5 per top node.
constexpr int kLeavesPerMid = 7;
constexpr int kMidsPerTop = 5;
constexpr double kBaseLogPrice = 3.0;
constexpr double kPriceShareSlope = 0.5;
constexpr double kFeatureNoise = 0.35;
constexpr double kIntentLeafProb = 0.6;
constexpr double kPurchaseRate = 0.05;
constexpr double kTrafficScale = 1000.0;

std::string padded(const char* prefix, int value, int width) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%0*d", prefix, width, value);
  return buf;
}

int digits(int n) {
  int d = 1;
  while (n >= 10) {
    n /= 10;
    ++d;
  }
  return d;
}

std::vector<std::string> taxonomy_path_for(int leaf) {
  const int mid = leaf / kLeavesPerMid;
  const int top = mid / kMidsPerTop;
  return {padded("top", top, 2), padded("mid", mid, 3), padded("cat", leaf, 3)};
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Planted relevance direction. The first three coordinates carry fixed
// marketplace semantics (seller history, price, intent match); the rest
// are random.
std::vector<double> planted_weights(const GenConfig& c) {
  Rng rng = make_rng(c.seed, {label_hash("planted_weights")});
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> w(static_cast<std::size_t>(c.feature_dim));
  const double fixed[3] = {0.4, c.price_relevance, 0.9};
  double rest_norm = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i < 3) {
      w[i] = fixed[i];
    } else {
      w[i] = normal(rng);
      rest_norm += w[i] * w[i];
    }
  }
  if (rest_norm > 0.0) {
    const double scale = 1.0 / std::sqrt(rest_norm);
    for (std::size_t i = 3; i < w.size(); ++i) w[i] *= scale;
  }
  return w;
}

}  // namespace

void validate_config(const GenConfig& c) {
  auto positive = [](int v, const char* name) {
    if (v < 1) throw std::invalid_argument(std::string(name) + " must be >= 1");
  };
  positive(c.num_queries, "num_queries");
  positive(c.docs_per_query, "docs_per_query");
  positive(c.feature_dim, "feature_dim");
  positive(c.num_categories, "num_categories");
  positive(c.tier_count, "tier_count");
  positive(c.observation_positions, "observation_positions");
  if (c.num_sellers < c.tier_count) {
    throw std::invalid_argument("num_sellers must be >= tier_count");
  }
  auto exponent = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string(name) + " must be > 0");
    }
  };
  exponent(c.traffic_power, "traffic_power");
  exponent(c.wealth_power, "wealth_power");
  exponent(c.price_sigma, "price_sigma");
  exponent(c.listing_power, "listing_power");
  exponent(c.category_power, "category_power");
  if (!(c.observation_decay > 0.0 && c.observation_decay <= 1.0)) {
    throw std::invalid_argument("observation_decay must be in (0, 1]");
  }
  if (!std::isfinite(c.price_relevance)) throw std::invalid_argument("price_relevance must be finite");
  if (c.popularity_bonus < 0.0 || c.grade_noise < 0.0) {
    throw std::invalid_argument("popularity_bonus and grade_noise must be >= 0");
  }
}

SellerMarket generate_market(const GenConfig& c) {
  validate_config(c);
  Rng rng = make_rng(c.seed, {label_hash("sellers")});
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  SellerMarket m;
  m.seller_gmv.resize(static_cast<std::size_t>(c.num_sellers));
  for (double& g : m.seller_gmv) {
    g = std::pow(1.0 - unif(rng), -1.0 / c.wealth_power);  // Pareto, x_m = 1
  }
  std::sort(m.seller_gmv.begin(), m.seller_gmv.end());

  const auto tiers = static_cast<std::size_t>(c.tier_count);
  m.seller_tier.resize(m.seller_gmv.size());
  m.tier_gmv_share.assign(tiers, 0.0);
  m.tier_listing_share.assign(tiers, 0.0);
  double total_gmv = 0.0, total_listings = 0.0;
  for (std::size_t s = 0; s < m.seller_gmv.size(); ++s) {
    const std::size_t t = s * tiers / m.seller_gmv.size();
    m.seller_tier[s] = static_cast<int>(t) + 1;
    const double listings = std::pow(m.seller_gmv[s], c.listing_power);
    m.tier_gmv_share[t] += m.seller_gmv[s];
    m.tier_listing_share[t] += listings;
    total_gmv += m.seller_gmv[s];
    total_listings += listings;
  }
  m.tier_log_price_loc.resize(tiers);
  for (std::size_t t = 0; t < tiers; ++t) {
    m.tier_gmv_share[t] /= total_gmv;
    m.tier_listing_share[t] /= total_listings;
    // Crowded tiers sell cheaper.
    const double relative_share = m.tier_listing_share[t] * static_cast<double>(tiers);
    m.tier_log_price_loc[t] = kBaseLogPrice - kPriceShareSlope * (relative_share - 1.0);
  }
  return m;
}

Dataset generate(const GenConfig& c) {
  const SellerMarket market = generate_market(c);
  const auto tiers = static_cast<std::size_t>(c.tier_count);
  const std::vector<double> w = planted_weights(c);

  Dataset d;
  d.feature_dim = c.feature_dim;
  d.tier_count = c.tier_count;
  d.tier_population = uniform_tier_population(c.tier_count);
  d.observation_model =
      geometric_observation_model(c.observation_decay, c.observation_positions);
  d.categories.reserve(static_cast<std::size_t>(c.num_categories));
  for (int leaf = 0; leaf < c.num_categories; ++leaf) {
    d.categories.push_back(taxonomy_path_for(leaf).back());
  }

  // Zipf-imbalanced taxonomy; leaf popularity order is shuffled once so
  // that popular leaves are spread across the tree.
  std::vector<int> leaf_by_rank(static_cast<std::size_t>(c.num_categories));
  std::iota(leaf_by_rank.begin(), leaf_by_rank.end(), 0);
  {
    Rng rng = make_rng(c.seed, {label_hash("taxonomy")});
    std::shuffle(leaf_by_rank.begin(), leaf_by_rank.end(), rng);
  }
  std::vector<double> leaf_weights(leaf_by_rank.size());
  for (std::size_t r = 0; r < leaf_weights.size(); ++r) {
    leaf_weights[r] = std::pow(static_cast<double>(r + 1), -c.category_power);
  }
  const std::discrete_distribution<int> leaf_rank_dist(leaf_weights.begin(),
                                                       leaf_weights.end());
  const std::discrete_distribution<int> tier_dist(market.tier_listing_share.begin(),
                                                  market.tier_listing_share.end());

  // Query traffic is Zipf over a random popularity rank.
  std::vector<int> traffic_rank(static_cast<std::size_t>(c.num_queries));
  std::iota(traffic_rank.begin(), traffic_rank.end(), 1);
  {
    Rng rng = make_rng(c.seed, {label_hash("traffic")});
    std::shuffle(traffic_rank.begin(), traffic_rank.end(), rng);
  }

  // Standardization of log price for the price feature.
  double lp_mean = 0.0, lp_second = 0.0;
  for (std::size_t t = 0; t < tiers; ++t) {
    const double loc = market.tier_log_price_loc[t];
    lp_mean += market.tier_listing_share[t] * loc;
    lp_second += market.tier_listing_share[t] * loc * loc;
  }
  const double lp_sd = std::sqrt(std::max(lp_second - lp_mean * lp_mean, 0.0) +
                                 c.price_sigma * c.price_sigma);

  const int qwidth = std::max(5, digits(c.num_queries));
  const int dwidth = std::max(3, digits(c.docs_per_query));
  d.queries.resize(static_cast<std::size_t>(c.num_queries));

  parallel_for(d.queries.size(), 0, [&](std::size_t qi) {
    Rng rng = make_rng(c.seed, {label_hash("query"), qi});
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto leaf_dist = leaf_rank_dist;
    auto seller_tier_dist = tier_dist;

    QuerySet& q = d.queries[qi];
    q.query_id = padded("q", static_cast<int>(qi), qwidth);
    q.traffic_weight =
        kTrafficScale * std::pow(static_cast<double>(traffic_rank[qi]), -c.traffic_power);
    q.purchase_count = kPurchaseRate * q.traffic_weight;

    const int num_intents = 1 + static_cast<int>(unif(rng) * 3.0);
    std::vector<int> intents;
    for (int i = 0; i < num_intents; ++i) {
      intents.push_back(leaf_by_rank[static_cast<std::size_t>(leaf_dist(rng))]);
    }

    q.judged_docs.resize(static_cast<std::size_t>(c.docs_per_query));
    double price_sum = 0.0;
    for (std::size_t di = 0; di < q.judged_docs.size(); ++di) {
      JudgedDoc& jd = q.judged_docs[di];
      Document& doc = jd.doc;
      doc.doc_id = padded("d", static_cast<int>(di), dwidth);

      const std::size_t t = static_cast<std::size_t>(seller_tier_dist(rng));
      doc.seller_tier = static_cast<int>(t) + 1;
      const double popularity =
          tiers > 1 ? static_cast<double>(t) / static_cast<double>(tiers - 1) : 0.5;

      int leaf;
      if (unif(rng) < kIntentLeafProb) {
        leaf = intents[static_cast<std::size_t>(unif(rng) * num_intents) %
                       intents.size()];
      } else {
        leaf = leaf_by_rank[static_cast<std::size_t>(leaf_dist(rng))];
      }
      doc.taxonomy_path = taxonomy_path_for(leaf);
      const bool intent_match =
          std::find(intents.begin(), intents.end(), leaf) != intents.end();

      const double log_price =
          market.tier_log_price_loc[t] + c.price_sigma * normal(rng);
      doc.price = std::exp(log_price);
      price_sum += doc.price;

      doc.features.resize(static_cast<std::size_t>(c.feature_dim));
      for (std::size_t f = 0; f < doc.features.size(); ++f) {
        double x;
        switch (f) {
          case 0:  // seller history
            x = 2.0 * popularity - 1.0 + kFeatureNoise * normal(rng);
            break;
          case 1:  // price level
            x = (log_price - lp_mean) / lp_sd + kFeatureNoise * normal(rng);
            break;
          case 2:  // taxonomy intent match
            x = (intent_match ? 1.0 : -1.0) + kFeatureNoise * normal(rng);
            break;
          default:
            x = normal(rng);
        }
        doc.features[f] = x;
      }

      double z = c.popularity_bonus * (popularity - 0.5) + c.grade_noise * normal(rng);
      for (std::size_t f = 0; f < w.size(); ++f) z += w[f] * doc.features[f];
      const long step = std::lround(4.0 * sigmoid(z));
      jd.grade = 1 + static_cast<int>(std::clamp(step, 0L, 4L));
    }
    const double mean_price = price_sum / static_cast<double>(q.judged_docs.size());
    for (auto& jd : q.judged_docs) jd.doc.premium = jd.doc.price > mean_price;
    q.topic_dist = grade_weighted_topics(q.judged_docs);
  });
  return d;
}

std::map<std::string, Ranking> plant_oracle_ranking(const Dataset& dataset) {
  std::map<std::string, Ranking> out;
  for (const auto& q : dataset.queries) {
    out[q.query_id] = Ranking{&q, ideal_order(q)};
  }
  return out;
}

}  // namespace marketrank
