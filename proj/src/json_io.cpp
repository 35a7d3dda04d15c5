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

#include "marketrank/json_io.hpp"

#include <stdexcept>
#include <string>

namespace marketrank {

using nlohmann::json;

namespace {

template <typename T>
void read_opt(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) out = it->get<T>();
}

std::string kind_name(PolicyKind k) { return k == PolicyKind::kGreedy ? "greedy" : "pointwise"; }
std::string value_fn_name(ValueFunction v) {
  return v == ValueFunction::kStatic ? "static" : "stochastic";
}
std::string noise_name(NoiseGranularity n) {
  return n == NoiseGranularity::kPerEvaluation ? "per_evaluation" : "per_query";
}
std::string shaping_name(Shaping s) {
  return s == Shaping::kCanonicalLog ? "canonical_log" : "linear_rank";
}

[[noreturn]] void bad_enum(const char* field, const std::string& value) {
  throw std::invalid_argument(std::string("unknown ") + field + " '" + value + "'");
}

}  // namespace

void to_json(json& j, const LayerShape& v) { j = json{{"rows", v.rows}, {"cols", v.cols}}; }
void from_json(const json& j, LayerShape& v) {
  v.rows = j.at("rows").get<int>();
  v.cols = j.at("cols").get<int>();
}

void to_json(json& j, const ParamVector& v) {
  j = json{{"layout", v.layout}, {"values", v.values}};
}
void from_json(const json& j, ParamVector& v) {
  v.layout = j.at("layout").get<std::vector<LayerShape>>();
  v.values = j.at("values").get<std::vector<double>>();
}

void to_json(json& j, const PolicyConfig& v) {
  j = json{{"kind", kind_name(v.kind)},
           {"value_fn", value_fn_name(v.value_fn)},
           {"feature_dim", v.feature_dim},
           {"hidden_dims", v.hidden_dims},
           {"k_rank", v.k_rank},
           {"noise", noise_name(v.noise)}};
}
void from_json(const json& j, PolicyConfig& v) {
  if (auto it = j.find("kind"); it != j.end()) {
    const auto s = it->get<std::string>();
    if (s == "greedy") v.kind = PolicyKind::kGreedy;
    else if (s == "pointwise") v.kind = PolicyKind::kPointwise;
    else bad_enum("policy kind", s);
  }
  if (auto it = j.find("value_fn"); it != j.end()) {
    const auto s = it->get<std::string>();
    if (s == "static") v.value_fn = ValueFunction::kStatic;
    else if (s == "stochastic") v.value_fn = ValueFunction::kStochastic;
    else bad_enum("value function", s);
  }
  if (auto it = j.find("noise"); it != j.end()) {
    const auto s = it->get<std::string>();
    if (s == "per_evaluation") v.noise = NoiseGranularity::kPerEvaluation;
    else if (s == "per_query") v.noise = NoiseGranularity::kPerQuery;
    else bad_enum("noise granularity", s);
  }
  read_opt(j, "feature_dim", v.feature_dim);
  read_opt(j, "hidden_dims", v.hidden_dims);
  read_opt(j, "k_rank", v.k_rank);
}

void to_json(json& j, const GenConfig& v) {
  j = json{{"num_queries", v.num_queries},
           {"docs_per_query", v.docs_per_query},
           {"feature_dim", v.feature_dim},
           {"num_categories", v.num_categories},
           {"tier_count", v.tier_count},
           {"traffic_power", v.traffic_power},
           {"wealth_power", v.wealth_power},
           {"price_sigma", v.price_sigma},
           {"seed", v.seed},
           {"num_sellers", v.num_sellers},
           {"listing_power", v.listing_power},
           {"category_power", v.category_power},
           {"popularity_bonus", v.popularity_bonus},
           {"price_relevance", v.price_relevance},
           {"grade_noise", v.grade_noise},
           {"observation_decay", v.observation_decay},
           {"observation_positions", v.observation_positions}};
}
void from_json(const json& j, GenConfig& v) {
  read_opt(j, "num_queries", v.num_queries);
  read_opt(j, "docs_per_query", v.docs_per_query);
  read_opt(j, "feature_dim", v.feature_dim);
  read_opt(j, "num_categories", v.num_categories);
  read_opt(j, "tier_count", v.tier_count);
  read_opt(j, "traffic_power", v.traffic_power);
  read_opt(j, "wealth_power", v.wealth_power);
  read_opt(j, "price_sigma", v.price_sigma);
  read_opt(j, "seed", v.seed);
  read_opt(j, "num_sellers", v.num_sellers);
  read_opt(j, "listing_power", v.listing_power);
  read_opt(j, "category_power", v.category_power);
  read_opt(j, "popularity_bonus", v.popularity_bonus);
  read_opt(j, "price_relevance", v.price_relevance);
  read_opt(j, "grade_noise", v.grade_noise);
  read_opt(j, "observation_decay", v.observation_decay);
  read_opt(j, "observation_positions", v.observation_positions);
}

void to_json(json& j, const FitnessTerm& v) {
  j = json{{"metric", metric_name(v.metric)}, {"weight", v.weight}, {"k", v.k}};
}
void from_json(const json& j, FitnessTerm& v) {
  const auto name = j.at("metric").get<std::string>();
  const auto id = parse_metric(name);
  if (!id) bad_enum("metric", name);
  v.metric = *id;
  read_opt(j, "weight", v.weight);
  read_opt(j, "k", v.k);
}

void to_json(json& j, const FitnessSpec& v) {
  j = json{{"terms", v.terms},
           {"aggregation", v.percentiles.empty() ? json("mean") : json(v.percentiles)},
           {"use_traffic_weighting", v.use_traffic_weighting},
           {"gini_position", v.gini_position}};
}
void from_json(const json& j, FitnessSpec& v) {
  v.terms = j.at("terms").get<std::vector<FitnessTerm>>();
  v.percentiles.clear();
  if (auto it = j.find("aggregation"); it != j.end()) {
    if (it->is_array()) {
      v.percentiles = it->get<std::vector<double>>();
    } else if (!(it->is_string() && it->get<std::string>() == "mean")) {
      throw std::invalid_argument("aggregation must be \"mean\" or a list of percentiles");
    }
  }
  read_opt(j, "use_traffic_weighting", v.use_traffic_weighting);
  read_opt(j, "gini_position", v.gini_position);
}

void to_json(json& j, const EsConfig& v) {
  j = json{{"lambda", v.lambda},           {"mu", v.mu},
           {"sigma", v.sigma},             {"mask_p", v.mask_p},
           {"update", v.update},           {"iters", v.iters},
           {"batch_size", v.batch_size},   {"seed", v.seed},
           {"shaping", shaping_name(v.shaping)},
           {"subsample_docs", v.subsample_docs},
           {"workers", v.workers}};
}
void from_json(const json& j, EsConfig& v) {
  read_opt(j, "lambda", v.lambda);
  read_opt(j, "mu", v.mu);
  read_opt(j, "sigma", v.sigma);
  read_opt(j, "mask_p", v.mask_p);
  read_opt(j, "update", v.update);
  read_opt(j, "iters", v.iters);
  read_opt(j, "batch_size", v.batch_size);
  read_opt(j, "seed", v.seed);
  read_opt(j, "subsample_docs", v.subsample_docs);
  read_opt(j, "workers", v.workers);
  if (auto it = j.find("shaping"); it != j.end()) {
    const auto s = it->get<std::string>();
    if (s == "canonical_log") v.shaping = Shaping::kCanonicalLog;
    else if (s == "linear_rank") v.shaping = Shaping::kLinearRank;
    else bad_enum("shaping", s);
  }
}

void to_json(json& j, const SplitFractions& v) {
  j = json::array({v.train, v.validation, v.test});
}
void from_json(const json& j, SplitFractions& v) {
  if (!j.is_array() || j.size() != 3) {
    throw std::invalid_argument("split fractions must be [train, validation, test]");
  }
  v.train = j[0].get<double>();
  v.validation = j[1].get<double>();
  v.test = j[2].get<double>();
}

void to_json(json& j, const FitnessReport& v) {
  j = json{{"combined", v.combined}, {"per_metric", v.per_metric},
           {"batch_query_ids", v.batch_query_ids}};
}

}  // namespace marketrank
