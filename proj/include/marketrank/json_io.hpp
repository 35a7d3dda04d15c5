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

// nlohmann::json conversions for configs and checkpoints. Missing fields
// keep their defaults; unknown enum strings throw std::invalid_argument.

#ifndef MARKETRANK_JSON_IO_HPP_
#define MARKETRANK_JSON_IO_HPP_

#include "json.hpp"
#include "marketrank/corpus.hpp"
#include "marketrank/es.hpp"
#include "marketrank/fitness.hpp"
#include "marketrank/policy.hpp"
#include "marketrank/synthgen.hpp"

namespace marketrank {

void to_json(nlohmann::json& j, const LayerShape& v);
void from_json(const nlohmann::json& j, LayerShape& v);
void to_json(nlohmann::json& j, const ParamVector& v);
void from_json(const nlohmann::json& j, ParamVector& v);
void to_json(nlohmann::json& j, const PolicyConfig& v);
void from_json(const nlohmann::json& j, PolicyConfig& v);
void to_json(nlohmann::json& j, const GenConfig& v);
void from_json(const nlohmann::json& j, GenConfig& v);
void to_json(nlohmann::json& j, const FitnessTerm& v);
void from_json(const nlohmann::json& j, FitnessTerm& v);
void to_json(nlohmann::json& j, const FitnessSpec& v);
void from_json(const nlohmann::json& j, FitnessSpec& v);
void to_json(nlohmann::json& j, const EsConfig& v);
void from_json(const nlohmann::json& j, EsConfig& v);
void to_json(nlohmann::json& j, const SplitFractions& v);
void from_json(const nlohmann::json& j, SplitFractions& v);
void to_json(nlohmann::json& j, const FitnessReport& v);

}  // namespace marketrank

#endif  // MARKETRANK_JSON_IO_HPP_
