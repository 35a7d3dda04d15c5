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

#include "marketrank/policy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "marketrank/json_io.hpp"

namespace marketrank {

namespace {

std::string shape_string(std::span<const LayerShape> layout) {
  std::string s = "[";
  for (std::size_t i = 0; i < layout.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(layout[i].rows) + "x" + std::to_string(layout[i].cols);
  }
  return s + "]";
}

// Scores documents through the network with the first layer factored:
// W0 (s - x) = W0 s - W0 x, and W0 s is the mean of the selected docs'
// projections. Every candidate then costs O(hidden) instead of
// O(hidden * features).
class FactoredScorer {
 public:
  FactoredScorer(const ParamVector& params, const PolicyConfig& config)
      : params_(params), features_(static_cast<std::size_t>(config.feature_dim)),
        stochastic_(config.stochastic()) {
    check_layout(params, config);
    const LayerShape& first = params.layout.front();
    rows0_ = static_cast<std::size_t>(first.rows);
    cols0_ = static_cast<std::size_t>(first.cols);
    bias0_ = rows0_ * cols0_;
    std::size_t widest = 0;
    for (const auto& l : params.layout) widest = std::max(widest, static_cast<std::size_t>(l.rows));
    buf_a_.resize(widest);
    buf_b_.resize(widest);
  }

  std::size_t width() const { return rows0_; }

  // out[r] = sum_c W0[r, c] * x[c] over the feature columns.
  void project(const Document& doc, double* out) const {
    const double* w = params_.values.data();
    for (std::size_t r = 0; r < rows0_; ++r) {
      const double* row = w + r * cols0_;
      double acc = 0.0;
      for (std::size_t c = 0; c < features_; ++c) acc += row[c] * doc.features[c];
      out[r] = acc;
    }
  }

  // Network output given the mean selected projection (may be null for the
  // empty state), the doc's projection and the stochastic input.
  double score(const double* mean_projection, const double* doc_projection,
               double noise) {
    const double* w = params_.values.data();
    double* pre = buf_a_.data();
    for (std::size_t r = 0; r < rows0_; ++r) {
      double z = w[bias0_ + r] - doc_projection[r];
      if (mean_projection) z += mean_projection[r];
      if (stochastic_) z += w[r * cols0_ + features_] * noise;
      pre[r] = z;
    }
    if (params_.layout.size() == 1) return pre[0];

    std::size_t offset = bias0_ + rows0_;
    std::size_t in_width = rows0_;
    double* in = buf_a_.data();
    double* out = buf_b_.data();
    for (std::size_t l = 1; l < params_.layout.size(); ++l) {
      for (std::size_t i = 0; i < in_width; ++i) in[i] = std::max(in[i], 0.0);
      const auto rows = static_cast<std::size_t>(params_.layout[l].rows);
      const double* wl = w + offset;
      const double* bl = wl + rows * in_width;
      for (std::size_t r = 0; r < rows; ++r) {
        const double* row = wl + r * in_width;
        double acc = bl[r];
        for (std::size_t c = 0; c < in_width; ++c) acc += row[c] * in[c];
        out[r] = acc;
      }
      offset += rows * in_width + rows;
      in_width = rows;
      std::swap(in, out);
    }
    return in[0];
  }

 private:
  const ParamVector& params_;
  std::size_t features_;
  bool stochastic_;
  std::size_t rows0_ = 0, cols0_ = 0, bias0_ = 0;
  std::vector<double> buf_a_, buf_b_;
};

double sanitize(double v) {
  return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
}

bool better(double v, const std::string& id, double best_v, const std::string* best_id) {
  if (best_id == nullptr) return true;
  if (v != best_v) return v > best_v;
  return id < *best_id;
}

std::size_t emit_count(const PolicyConfig& config, std::size_t n) {
  if (config.k_rank < 1) throw std::invalid_argument("k_rank must be >= 1");
  return std::min(static_cast<std::size_t>(config.k_rank), n);
}

}  // namespace

std::string policy_tag(const PolicyConfig& config) {
  std::string tag = config.stochastic() ? "S" : "";
  tag += config.kind == PolicyKind::kGreedy ? "G" : "P";
  return tag;
}

std::vector<LayerShape> layout_for(const PolicyConfig& config) {
  if (config.feature_dim < 1) throw std::invalid_argument("feature_dim must be >= 1");
  std::vector<LayerShape> layout;
  int in = config.input_width();
  for (int h : config.hidden_dims) {
    if (h < 1) throw std::invalid_argument("hidden widths must be >= 1");
    layout.push_back({h, in});
    in = h;
  }
  layout.push_back({1, in});
  return layout;
}

std::size_t param_count(std::span<const LayerShape> layout) {
  std::size_t n = 0;
  for (const auto& l : layout) {
    n += static_cast<std::size_t>(l.rows) * static_cast<std::size_t>(l.cols) +
         static_cast<std::size_t>(l.rows);
  }
  return n;
}

ParamVector init_params(const PolicyConfig& config, std::uint64_t seed) {
  ParamVector p;
  p.layout = layout_for(config);
  p.values.reserve(param_count(p.layout));
  Rng rng = make_rng(seed, {label_hash("init_params")});
  for (const auto& l : p.layout) {
    std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(static_cast<double>(l.cols)));
    for (int i = 0; i < l.rows * l.cols; ++i) p.values.push_back(normal(rng));
    for (int i = 0; i < l.rows; ++i) p.values.push_back(0.0);
  }
  return p;
}

double mlp_forward(const ParamVector& params, std::span<const double> input) {
  if (params.layout.empty()) throw LayoutMismatchError("empty layout");
  if (params.values.size() != param_count(params.layout)) {
    throw LayoutMismatchError("parameter vector has " + std::to_string(params.values.size()) +
                              " values, layout " + shape_string(params.layout) + " needs " +
                              std::to_string(param_count(params.layout)));
  }
  if (static_cast<int>(input.size()) != params.layout.front().cols) {
    throw LayoutMismatchError("input width " + std::to_string(input.size()) +
                              ", network expects " +
                              std::to_string(params.layout.front().cols));
  }
  std::vector<double> in(input.begin(), input.end()), out;
  std::size_t offset = 0;
  for (std::size_t l = 0; l < params.layout.size(); ++l) {
    const auto rows = static_cast<std::size_t>(params.layout[l].rows);
    const auto cols = static_cast<std::size_t>(params.layout[l].cols);
    if (cols != in.size()) throw LayoutMismatchError("inconsistent layer widths");
    const double* w = params.values.data() + offset;
    const double* b = w + rows * cols;
    out.assign(rows, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
      double acc = b[r];
      for (std::size_t c = 0; c < cols; ++c) acc += w[r * cols + c] * in[c];
      out[r] = (l + 1 < params.layout.size()) ? std::max(acc, 0.0) : acc;
    }
    offset += rows * cols + rows;
    in.swap(out);
  }
  if (in.size() != 1) throw LayoutMismatchError("network output width is not 1");
  return in[0];
}

std::vector<double> aggregate_state(std::span<const Document* const> selected,
                                    int feature_dim) {
  std::vector<double> s(static_cast<std::size_t>(feature_dim), 0.0);
  if (selected.empty()) return s;
  for (const Document* d : selected) {
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += d->features[i];
  }
  for (double& x : s) x /= static_cast<double>(selected.size());
  return s;
}

double value(const ParamVector& params, const PolicyConfig& config,
             const Document& doc, std::span<const double> state, Rng& rng) {
  const auto f = static_cast<std::size_t>(config.feature_dim);
  if (state.size() != f || doc.features.size() != f) {
    throw LayoutMismatchError("state/feature width differs from feature_dim");
  }
  std::vector<double> input(static_cast<std::size_t>(config.input_width()));
  for (std::size_t i = 0; i < f; ++i) input[i] = state[i] - doc.features[i];
  if (config.stochastic()) {
    input[f] = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  }
  return mlp_forward(params, input);
}

Ranking greedy_rank(const ParamVector& params, const PolicyConfig& config,
                    const QuerySet& query, Rng& rng) {
  const std::size_t n = query.judged_docs.size();
  Ranking out{&query, {}};
  if (n == 0) return out;
  const std::size_t k = emit_count(config, n);
  FactoredScorer scorer(params, config);
  const std::size_t h = scorer.width();

  std::vector<double> proj(n * h);
  for (std::size_t d = 0; d < n; ++d) scorer.project(query.judged_docs[d].doc, &proj[d * h]);
  std::vector<double> sum(h, 0.0), mean(h, 0.0);
  std::vector<std::size_t> remaining(n);
  std::iota(remaining.begin(), remaining.end(), std::size_t{0});

  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const bool per_query = config.noise == NoiseGranularity::kPerQuery;
  const double query_noise = (config.stochastic() && per_query) ? unif(rng) : 0.0;

  out.order.reserve(k);
  for (std::size_t step = 0; step < k; ++step) {
    const double* state = nullptr;
    if (step > 0) {
      for (std::size_t r = 0; r < h; ++r) mean[r] = sum[r] / static_cast<double>(step);
      state = mean.data();
    }
    std::size_t best_pos = 0;
    double best_v = 0.0;
    const std::string* best_id = nullptr;
    for (std::size_t pos = 0; pos < remaining.size(); ++pos) {
      const std::size_t d = remaining[pos];
      double noise = query_noise;
      if (config.stochastic() && !per_query) noise = unif(rng);
      const double v = sanitize(scorer.score(state, &proj[d * h], noise));
      const std::string& id = query.judged_docs[d].doc.doc_id;
      if (better(v, id, best_v, best_id)) {
        best_pos = pos;
        best_v = v;
        best_id = &id;
      }
    }
    const std::size_t chosen = remaining[best_pos];
    out.order.push_back(chosen);
    for (std::size_t r = 0; r < h; ++r) sum[r] += proj[chosen * h + r];
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best_pos));
  }
  return out;
}

std::vector<double> pointwise_scores(const ParamVector& params,
                                     const PolicyConfig& config,
                                     const QuerySet& query, Rng& rng) {
  const std::size_t n = query.judged_docs.size();
  FactoredScorer scorer(params, config);
  std::vector<double> proj(scorer.width());
  std::vector<double> scores(n);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const bool per_query = config.noise == NoiseGranularity::kPerQuery;
  const double query_noise = (config.stochastic() && per_query) ? unif(rng) : 0.0;
  for (std::size_t d = 0; d < n; ++d) {
    scorer.project(query.judged_docs[d].doc, proj.data());
    double noise = query_noise;
    if (config.stochastic() && !per_query) noise = unif(rng);
    scores[d] = sanitize(scorer.score(nullptr, proj.data(), noise));
  }
  return scores;
}

Ranking pointwise_rank(const ParamVector& params, const PolicyConfig& config,
                       const QuerySet& query, Rng& rng) {
  const std::size_t n = query.judged_docs.size();
  Ranking out{&query, {}};
  if (n == 0) return out;
  const std::size_t k = emit_count(config, n);
  const std::vector<double> scores = pointwise_scores(params, config, query, rng);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto cmp = [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return query.judged_docs[a].doc.doc_id < query.judged_docs[b].doc.doc_id;
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k),
                    order.end(), cmp);
  order.resize(k);
  out.order = std::move(order);
  return out;
}

Ranking rank(const ParamVector& params, const PolicyConfig& config,
             const QuerySet& query, Rng& rng) {
  return config.kind == PolicyKind::kGreedy ? greedy_rank(params, config, query, rng)
                                            : pointwise_rank(params, config, query, rng);
}

void check_layout(const ParamVector& params, const PolicyConfig& config) {
  const auto expected = layout_for(config);
  if (params.layout != expected) {
    throw LayoutMismatchError("layout mismatch: expected " + shape_string(expected) +
                              ", found " + shape_string(params.layout));
  }
  if (params.values.size() != param_count(expected)) {
    throw LayoutMismatchError("parameter count mismatch: expected " +
                              std::to_string(param_count(expected)) + ", found " +
                              std::to_string(params.values.size()));
  }
}

void save_checkpoint(const Checkpoint& checkpoint, const std::filesystem::path& path) {
  check_layout(checkpoint.params, checkpoint.config);
  nlohmann::json j;
  j["policy"] = checkpoint.config;
  j["params"] = checkpoint.params;
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write checkpoint " + path.string());
  out << j.dump(1) << '\n';
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open checkpoint " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed checkpoint " + path.string() + ": " + e.what());
  }
  Checkpoint c;
  c.config = j.at("policy").get<PolicyConfig>();
  c.params = j.at("params").get<ParamVector>();
  check_layout(c.params, c.config);
  return c;
}

}  // namespace marketrank
