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

// Generalized (1 + lambda) evolution strategy: lambda Bernoulli-masked
// Gaussian search directions per step, rank-shaped recombination of the
// best mu, and either unconditional or elitist parent replacement.

#ifndef MARKETRANK_ES_HPP_
#define MARKETRANK_ES_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "marketrank/corpus.hpp"
#include "marketrank/fitness.hpp"
#include "marketrank/policy.hpp"
#include "marketrank/random.hpp"

namespace marketrank {

enum class Shaping { kCanonicalLog, kLinearRank };

struct EsConfig {
  int lambda = 768;
  int mu = 50;
  double sigma = 0.01;
  double mask_p = 0.05;
  bool update = true;
  int iters = 100;
  int batch_size = 256;
  std::uint64_t seed = 0;
  Shaping shaping = Shaping::kCanonicalLog;
  // Docs kept per query each iteration; 0 means twice the policy's k_rank.
  int subsample_docs = 0;
  // Threads for child evaluation; 0 means hardware concurrency.
  std::size_t workers = 0;
  bool operator==(const EsConfig&) const = default;
};

// Throws std::invalid_argument on the first violated constraint.
void validate_es_config(const EsConfig& config);

// N(0,1) per coordinate, zeroed independently with probability 1 - mask_p.
std::vector<double> sample_search_gradient(std::size_t dim, double mask_p, Rng& rng);

using GradientSampler = std::function<std::vector<double>(std::size_t, double, Rng&)>;

// Recombination weights for the best mu of `sorted_scores` (non-increasing).
// Non-negative, non-increasing, summing to 1; they depend only on rank.
std::vector<double> shape_weights(std::span<const double> sorted_scores, int mu,
                                  Shaping shaping);

struct Evaluation {
  double fitness = 0.0;
  std::map<std::string, double> metrics;
};

// Fitness of a parameter vector. `noise_seed` seeds any randomness the
// evaluation needs (stochastic value functions); it is derived per child so
// evaluation order cannot change results.
using EsFitness = std::function<Evaluation(std::span<const double>, std::uint64_t)>;

struct StepRecord {
  Evaluation parent;
  Evaluation candidate;
  bool took_candidate = false;
  double best_child = 0.0;
  int nonfinite_children = 0;
};

// One generation. `iteration` only feeds seed derivation.
std::pair<ParamVector, StepRecord> es_step(const ParamVector& parent,
                                           const EsFitness& fitness,
                                           const EsConfig& config,
                                           std::uint64_t iteration,
                                           const GradientSampler& sampler = {});

struct IterationRecord {
  int iteration = 0;
  // Batch fitness and metrics of the parameters kept after the step.
  double combined = 0.0;
  std::map<std::string, double> metrics;
  double parent_fitness = 0.0;
  double candidate_fitness = 0.0;
  bool took_candidate = false;
  double wall_seconds = 0.0;
};

struct TrainResult {
  ParamVector initial;
  ParamVector params;
  std::vector<IterationRecord> history;
};

using ProgressFn = std::function<void(const IterationRecord&)>;

// Trains on every query of `dataset` (the caller passes the train split).
// Each iteration draws a batch and fixed per-query doc subsamples shared by
// all children of that iteration.
TrainResult train(const Dataset& dataset, const PolicyConfig& policy_config,
                  const FitnessSpec& spec, const EsConfig& es_config,
                  const ProgressFn& progress = {});

}  // namespace marketrank

#endif  // MARKETRANK_ES_HPP_
