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

// Synthetic two-sided marketplace corpora: heavy-tailed seller wealth cut
// into equal-population tiers, tier-dependent price levels, imbalanced
// taxonomy, and graded relevance planted on the features.

#ifndef MARKETRANK_SYNTHGEN_HPP_
#define MARKETRANK_SYNTHGEN_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "marketrank/corpus.hpp"
#include "marketrank/ranking.hpp"

namespace marketrank {

struct GenConfig {
  int num_queries = 500;
  int docs_per_query = 60;
  int feature_dim = 20;
  int num_categories = 175;
  int tier_count = 20;
  double traffic_power = 1.0;  // Zipf exponent over query traffic
  double wealth_power = 1.16;  // Pareto shape of seller GMV
  double price_sigma = 1.0;    // log-normal scale of prices
  std::uint64_t seed = 0;

  // Structural knobs with fixed defaults.
  int num_sellers = 4000;
  double listing_power = 0.5;     // listings per seller ~ GMV^listing_power
  double category_power = 1.0;    // Zipf exponent over taxonomy leaves
  double popularity_bonus = 1.5;  // grade bonus for the richest tier
  double price_relevance = 0.5;   // planted relevance weight of the price feature
  double grade_noise = 0.5;
  double observation_decay = 0.7;
  int observation_positions = 10;

  bool operator==(const GenConfig&) const = default;
};

// Throws std::invalid_argument naming the first bad field.
void validate_config(const GenConfig& config);

// The seller population behind a generated corpus.
struct SellerMarket {
  std::vector<double> seller_gmv;  // sorted ascending
  std::vector<int> seller_tier;    // 1..tier_count, aligned with seller_gmv
  std::vector<double> tier_gmv_share;      // share of total GMV per tier
  std::vector<double> tier_listing_share;  // share of listings per tier
  std::vector<double> tier_log_price_loc;  // mean log price per tier
};

SellerMarket generate_market(const GenConfig& config);

Dataset generate(const GenConfig& config);

// Grade-descending, doc_id-ascending ordering of every query.
std::map<std::string, Ranking> plant_oracle_ranking(const Dataset& dataset);

}  // namespace marketrank

#endif  // MARKETRANK_SYNTHGEN_HPP_
