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

// Parameterized ranking policies. A small fully connected network scores a
// document against the running mean of the features already placed; the
// greedy policy picks the argmax slot by slot, the pointwise policy sorts
// documents once against an empty state.

#ifndef MARKETRANK_POLICY_HPP_
#define MARKETRANK_POLICY_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "marketrank/corpus.hpp"
#include "marketrank/random.hpp"
#include "marketrank/ranking.hpp"

namespace marketrank {

enum class PolicyKind { kGreedy, kPointwise };
enum class ValueFunction { kStatic, kStochastic };
// How often the stochastic input is redrawn.
enum class NoiseGranularity { kPerEvaluation, kPerQuery };

struct PolicyConfig {
  PolicyKind kind = PolicyKind::kGreedy;
  ValueFunction value_fn = ValueFunction::kStatic;
  int feature_dim = 20;
  std::vector<int> hidden_dims = {20};
  int k_rank = 10;
  NoiseGranularity noise = NoiseGranularity::kPerEvaluation;

  int input_width() const {
    return feature_dim + (value_fn == ValueFunction::kStochastic ? 1 : 0);
  }
  bool stochastic() const { return value_fn == ValueFunction::kStochastic; }
  bool operator==(const PolicyConfig&) const = default;
};

// Short tag used in reports: G, SG, P or SP.
std::string policy_tag(const PolicyConfig& config);

struct LayerShape {
  int rows = 0;  // outputs
  int cols = 0;  // inputs
  bool operator==(const LayerShape&) const = default;
};

// Flat parameters. Layer l occupies rows*cols row-major weights followed by
// rows biases; layers are stored input to output.
struct ParamVector {
  std::vector<double> values;
  std::vector<LayerShape> layout;

  std::size_t size() const { return values.size(); }
  bool operator==(const ParamVector&) const = default;
};

class LayoutMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::vector<LayerShape> layout_for(const PolicyConfig& config);
std::size_t param_count(std::span<const LayerShape> layout);

// Weights ~ N(0, 1/fan_in), biases 0.
ParamVector init_params(const PolicyConfig& config, std::uint64_t seed);

// Affine + ReLU per hidden layer, affine output.
double mlp_forward(const ParamVector& params, std::span<const double> input);

// Element-wise mean of the selected documents' features; zeros if none.
std::vector<double> aggregate_state(std::span<const Document* const> selected,
                                    int feature_dim);

// Phi(state - features), with a Uniform(0,1) input appended for stochastic
// value functions. `rng` is only drawn from when the value is stochastic.
double value(const ParamVector& params, const PolicyConfig& config,
             const Document& doc, std::span<const double> state, Rng& rng);

Ranking greedy_rank(const ParamVector& params, const PolicyConfig& config,
                    const QuerySet& query, Rng& rng);
Ranking pointwise_rank(const ParamVector& params, const PolicyConfig& config,
                       const QuerySet& query, Rng& rng);
// Dispatches on config.kind.
Ranking rank(const ParamVector& params, const PolicyConfig& config,
             const QuerySet& query, Rng& rng);

// Pointwise score of every judged doc, in judged order.
std::vector<double> pointwise_scores(const ParamVector& params,
                                     const PolicyConfig& config,
                                     const QuerySet& query, Rng& rng);

// Throws LayoutMismatchError naming expected and found shapes.
void check_layout(const ParamVector& params, const PolicyConfig& config);

struct Checkpoint {
  PolicyConfig config;
  ParamVector params;
};

void save_checkpoint(const Checkpoint& checkpoint, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace marketrank

#endif  // MARKETRANK_POLICY_HPP_
