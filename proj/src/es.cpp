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

#include "marketrank/es.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "marketrank/util.hpp"

namespace marketrank {

namespace {

const std::uint64_t kEpsStream = label_hash("search_gradient");
const std::uint64_t kNoiseStream = label_hash("fitness_noise");
const std::uint64_t kBatchStream = label_hash("batch");
const std::uint64_t kInitStream = label_hash("init");

}  // namespace

void validate_es_config(const EsConfig& c) {
  if (c.lambda < 1) throw std::invalid_argument("lambda must be >= 1");
  if (c.mu < 1 || c.mu > c.lambda) throw std::invalid_argument("mu must be in [1, lambda]");
  if (!(c.sigma > 0.0) || !std::isfinite(c.sigma)) throw std::invalid_argument("sigma must be > 0");
  if (!(c.mask_p > 0.0 && c.mask_p <= 1.0)) throw std::invalid_argument("mask_p must be in (0, 1]");
  if (c.iters < 0) throw std::invalid_argument("iters must be >= 0");
  if (c.batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
  if (c.subsample_docs < 0) throw std::invalid_argument("subsample_docs must be >= 0");
}

std::vector<double> sample_search_gradient(std::size_t dim, double mask_p, Rng& rng) {
  std::vector<double> eps(dim, 0.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  if (mask_p >= 1.0) {
    for (double& e : eps) e = normal(rng);
    return eps;
  }
  std::bernoulli_distribution keep(mask_p);
  for (double& e : eps) {
    if (keep(rng)) e = normal(rng);
  }
  return eps;
}

std::vector<double> shape_weights(std::span<const double> sorted_scores, int mu,
                                  Shaping shaping) {
  if (mu < 1 || static_cast<std::size_t>(mu) > sorted_scores.size()) {
    throw std::invalid_argument("mu must be in [1, number of scores]");
  }
  std::vector<double> w(static_cast<std::size_t>(mu));
  const double m = static_cast<double>(mu);
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double rank = static_cast<double>(j + 1);
    w[j] = shaping == Shaping::kCanonicalLog ? std::log(m + 0.5) - std::log(rank)
                                             : m - rank + 1.0;
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= total;
  return w;
}

std::pair<ParamVector, StepRecord> es_step(const ParamVector& parent,
                                           const EsFitness& fitness,
                                           const EsConfig& config,
                                           std::uint64_t iteration,
                                           const GradientSampler& sampler) {
  validate_es_config(config);
  const std::size_t dim = parent.values.size();
  const auto lambda = static_cast<std::size_t>(config.lambda);

  struct Child {
    std::vector<double> eps;
    double score = 0.0;
    std::size_t index = 0;
  };
  std::vector<Child> children(lambda);

  parallel_for(lambda, config.workers, [&](std::size_t c) {
    Rng rng = make_rng(config.seed, {kEpsStream, iteration, c});
    Child& child = children[c];
    child.index = c;
    child.eps = sampler ? sampler(dim, config.mask_p, rng)
                        : sample_search_gradient(dim, config.mask_p, rng);
    std::vector<double> theta(parent.values);
    for (std::size_t i = 0; i < dim; ++i) theta[i] += child.eps[i];
    child.score = fitness(theta, derive_seed(config.seed, {kNoiseStream, iteration, c})).fitness;
  });

  StepRecord record;
  for (auto& child : children) {
    if (!std::isfinite(child.score)) {
      ++record.nonfinite_children;
      child.score = -std::numeric_limits<double>::infinity();
    }
  }
  if (record.nonfinite_children > 0) {
    log_warning(std::to_string(record.nonfinite_children) +
                " children had non-finite fitness; ranked last");
  }
  std::stable_sort(children.begin(), children.end(), [](const Child& a, const Child& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.index < b.index;
  });
  record.best_child = children.front().score;

  std::vector<double> sorted(lambda);
  for (std::size_t c = 0; c < lambda; ++c) sorted[c] = children[c].score;
  const auto weights = shape_weights(sorted, config.mu, config.shaping);

  ParamVector candidate = parent;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    const double scale = config.sigma * weights[j];
    const auto& eps = children[j].eps;
    for (std::size_t i = 0; i < dim; ++i) candidate.values[i] += scale * eps[i];
  }

  // Parent and candidate share one noise stream so the elitist comparison
  // sees the same draws.
  const std::uint64_t compare_seed = derive_seed(config.seed, {kNoiseStream, iteration, lambda});
  record.parent = fitness(parent.values, compare_seed);
  record.candidate = fitness(candidate.values, compare_seed);

  if (config.update) {
    record.took_candidate = true;
  } else {
    const double cf = record.candidate.fitness;
    record.took_candidate = std::isfinite(cf) && cf > record.parent.fitness;
  }
  if (record.took_candidate) return {std::move(candidate), std::move(record)};
  return {parent, std::move(record)};
}

TrainResult train(const Dataset& dataset, const PolicyConfig& policy_config,
                  const FitnessSpec& spec, const EsConfig& es_config,
                  const ProgressFn& progress) {
  validate_es_config(es_config);
  validate_spec(spec);
  if (dataset.queries.empty()) throw std::invalid_argument("training dataset has no queries");
  if (policy_config.feature_dim != dataset.feature_dim) {
    throw std::invalid_argument("policy feature_dim " + std::to_string(policy_config.feature_dim) +
                                " differs from dataset feature_dim " +
                                std::to_string(dataset.feature_dim));
  }
  const int subsample = es_config.subsample_docs > 0 ? es_config.subsample_docs
                                                     : 2 * policy_config.k_rank;

  TrainResult result;
  result.initial = init_params(policy_config, derive_seed(es_config.seed, {kInitStream}));
  result.params = result.initial;
  const auto layout = result.params.layout;

  const auto start = std::chrono::steady_clock::now();
  for (int it = 1; it <= es_config.iters; ++it) {
    const auto iteration = static_cast<std::uint64_t>(it);
    Rng batch_rng = make_rng(es_config.seed, {kBatchStream, iteration});
    const auto batch = sample_batch(dataset, es_config.batch_size, batch_rng);
    std::vector<QuerySet> sub;
    sub.reserve(batch.size());
    for (const QuerySet* q : batch) sub.push_back(subsample_documents(*q, subsample, batch_rng));

    EsFitness fitness = [&](std::span<const double> theta, std::uint64_t noise_seed) {
      ParamVector p{std::vector<double>(theta.begin(), theta.end()), layout};
      Rng rng(noise_seed);
      const FitnessReport rep = evaluate_fitness(
          [&](const QuerySet& q) { return rank(p, policy_config, q, rng); }, sub, dataset, spec);
      return Evaluation{rep.combined, rep.per_metric};
    };

    auto [next, step] = es_step(result.params, fitness, es_config, iteration);
    result.params = std::move(next);

    IterationRecord rec;
    rec.iteration = it;
    const Evaluation& kept = step.took_candidate ? step.candidate : step.parent;
    rec.combined = kept.fitness;
    rec.metrics = kept.metrics;
    rec.parent_fitness = step.parent.fitness;
    rec.candidate_fitness = step.candidate.fitness;
    rec.took_candidate = step.took_candidate;
    rec.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (progress) progress(rec);
    result.history.push_back(std::move(rec));
  }
  return result;
}

}  // namespace marketrank
