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

// Runs the eight acceptance criteria at desk scale and prints one PASS/FAIL
// line per criterion. Exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "marketrank/baselines.hpp"
#include "marketrank/es.hpp"
#include "marketrank/harness.hpp"
#include "marketrank/metrics.hpp"
#include "marketrank/policy.hpp"
#include "marketrank/synthgen.hpp"
#include "marketrank/util.hpp"

using namespace marketrank;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int g_failures = 0;

void report(int id, Outcome& o, double secs) {
  if (!o.pass) ++g_failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ":" << o.detail.str()
            << " (" << std::fixed << std::setprecision(1) << secs << " s)" << std::endl;
}

bool near(double a, double b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

Document doc(std::string id, std::vector<std::string> path, int tier = 1, bool premium = false) {
  Document d;
  d.doc_id = std::move(id);
  d.features = {0.0};
  d.taxonomy_path = std::move(path);
  d.seller_tier = tier;
  d.premium = premium;
  return d;
}

QuerySet query_of(std::vector<JudgedDoc> docs, std::string id = "q", double purchases = 1.0) {
  QuerySet q;
  q.query_id = std::move(id);
  q.purchase_count = purchases;
  q.judged_docs = std::move(docs);
  q.topic_dist = grade_weighted_topics(q.judged_docs);
  return q;
}

Ranking in_order(const QuerySet& q) {
  Ranking r{&q, {}};
  for (std::size_t i = 0; i < q.size(); ++i) r.order.push_back(i);
  return r;
}

double gini_by_mad(const MarketLedger& l) {
  const double pop = std::accumulate(l.tier_population.begin(), l.tier_population.end(), 0.0);
  const double wealth = std::accumulate(l.tier_wealth.begin(), l.tier_wealth.end(), 0.0);
  const std::size_t n = l.tier_population.size();
  std::vector<double> x(n), u(n);
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = l.tier_population[i] / pop;
    u[i] = (l.tier_wealth[i] / wealth) / x[i];
    mean += x[i] * u[i];
  }
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) s += x[i] * x[j] * std::abs(u[i] - u[j]);
  }
  return s / (2.0 * mean);
}

// Metric oracle suite.
void criterion1() {
  const auto t0 = Clock::now();
  Outcome o;
  int checks = 0;
  auto check = [&](bool ok, const std::string& what) {
    ++checks;
    o.require(ok, what);
  };
  const std::vector<int> g5 = {5}, g32 = {3, 2}, g23 = {2, 3}, g55 = {5, 5}, none;
  check(near(dcg_at_k(g5, 1), 31.0), "dcg [5]");
  check(near(dcg_at_k(g32, 2), 7.0 + 3.0 / std::log2(3.0)), "dcg [3,2]");
  check(near(dcg_at_k(none, 10), 0.0), "dcg []");
  {
    std::vector<JudgedDoc> d = {{doc("a", {"r", "x"}), 2}, {doc("b", {"r", "x"}), 3}};
    const QuerySet q = query_of(d);
    check(near(ndcg_at_k(in_order(q), 2), (3.0 + 7.0 / std::log2(3.0)) / (7.0 + 3.0 / std::log2(3.0))),
          "ndcg [2,3]");
    const QuerySet single = query_of({{doc("a", {"r", "x"}), 4}});
    check(near(ndcg_at_k(in_order(single), 10), 1.0), "ndcg single");
  }
  check(near(grade_to_prob(5), 31.0 / 32.0) && near(grade_to_prob(0), 0.0) &&
            near(grade_to_prob(3), 7.0 / 32.0),
        "grade_to_prob");
  check(near(err_at_k(g5, 1), 0.96875), "err [5]");
  check(near(err_at_k(g55, 2), 0.96875 + (1 - 0.96875) * 0.96875 / 2.0), "err [5,5]");
  {
    std::vector<JudgedDoc> d = {{doc("a", {"r", "A"}), 4}, {doc("b", {"r", "A"}), 2}};
    QuerySet q = query_of(d);
    const std::vector<int> g = {4, 2};
    check(near(err_ia_at_k(in_order(q), 10), err_at_k(g, 10)), "err_ia single topic");
    q.topic_dist = {{"A", 0.5}, {"B", 0.5}};
    check(near(err_ia_at_k(in_order(q), 10), 0.5 * err_at_k(g, 10)), "err_ia masked topic");
  }
  {
    // Three topics, five docs, expanded term by term.
    std::vector<JudgedDoc> d = {{doc("a", {"r", "A"}), 5}, {doc("b", {"r", "B"}), 3},
                                {doc("c", {"r", "A"}), 2}, {doc("e", {"r", "C"}), 4},
                                {doc("f", {"r", "B"}), 1}};
    QuerySet q = query_of(d);
    q.topic_dist = {{"A", 0.5}, {"B", 0.3}, {"C", 0.2}};
    auto r = [](int g) { return (std::pow(2.0, g) - 1.0) / 32.0; };
    const double err_a = r(5) / 1 + (1 - r(5)) * r(2) / 3;
    const double err_b = r(3) / 2 + (1 - r(3)) * r(1) / 5;
    const double err_c = r(4) / 4;
    check(near(err_ia_at_k(in_order(q), 10), 0.5 * err_a + 0.3 * err_b + 0.2 * err_c),
          "err_ia three topics");
  }
  const std::vector<std::pair<double, double>> eq = {{1, 0.2}, {1, 0.4}}, zero = {{1, 0.3}, {0, 0.9}},
                                               two = {{2, 0.6}, {1, 0.3}};
  check(near(weighted_importance(eq), 0.3) && near(weighted_importance(zero), 0.3) &&
            near(weighted_importance(two), 0.5),
        "weighted_importance");
  const std::vector<double> tenths = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  const std::vector<double> quarter = {1, 2, 3, 4}, p50 = {50}, p2575 = {25, 75};
  const std::vector<double> flat = {0.7, 0.7, 0.7};
  check(near(percentile_aggregate(tenths, p50), 0.5) &&
            near(percentile_aggregate(quarter, p2575), 2.0) &&
            near(percentile_aggregate(flat, p2575), 0.7),
        "percentile");
  {
    const QuerySet q1 = query_of({{doc("a", {"r", "x"}, 1, true), 3}, {doc("b", {"r", "x"}, 1, false), 3}}, "q1");
    const QuerySet q2 = query_of({{doc("c", {"r", "x"}, 1, true), 3}, {doc("d", {"r", "x"}, 1, true), 3}}, "q2");
    const std::vector<Ranking> rs = {in_order(q1), in_order(q2)};
    check(near(incentive_score(rs, 2), 0.75), "incentive mixed");
    const std::vector<Ranking> all = {in_order(q2)};
    check(near(incentive_score(all, 2), 1.0), "incentive all");
  }
  {
    const QuerySet q1 = query_of({{doc("a", {"r", "x"}, 1), 3}}, "q1", 3.0);
    const QuerySet q2 = query_of({{doc("b", {"r", "x"}, 2), 3}}, "q2", 1.0);
    const std::vector<Ranking> rs = {in_order(q1), in_order(q2)};
    const std::vector<double> pop = uniform_tier_population(3);
    const MarketLedger l = build_ledger(rs, pop, 1);
    check(l.tier_wealth == std::vector<double>({3.0, 1.0, 0.0}), "ledger accumulation");
  }
  {
    const MarketLedger prop{{0.2, 0.3, 0.5}, {2, 3, 5}};
    const MarketLedger halves{{0.5, 0.5}, {0, 1}};
    MarketLedger one{uniform_tier_population(20), std::vector<double>(20, 0.0)};
    one.tier_wealth[4] = 2.0;
    check(near(gini_score(prop).gini, 0.0) && near(gini_score(prop).score, 1.0), "gini proportional");
    check(near(gini_score(halves).gini, 0.5) && near(gini_by_mad(halves), 0.5), "gini halves");
    check(near(gini_score(one).gini, 0.95) && near(gini_by_mad(one), 0.95) &&
              near(gini_score(one).score, 0.05),
          "gini one tier");
  }
  {
    const std::vector<std::string> cats = {"A", "B"};
    const QuerySet q1 = query_of({{doc("a", {"r", "A"}), 3}}, "q1");
    const QuerySet q2 = query_of({{doc("b", {"r", "A"}), 3}}, "q2");
    const QuerySet q3 = query_of({{doc("c", {"r", "B"}), 3}}, "q3");
    const std::vector<Ranking> skew = {in_order(q1), in_order(q2)};
    const std::vector<Ranking> even = {in_order(q1), in_order(q3)};
    check(near(chi2_uniformity(skew, 1, cats), 1.0 / 3.0), "chi2 skewed");
    check(near(chi2_uniformity(even, 1, cats), 1.0), "chi2 uniform");
  }
  // Trapezoid against mean absolute difference on random ledgers.
  Rng rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::uniform_int_distribution<int> tiers(2, 25);
    std::uniform_real_distribution<double> u(0.01, 1.0);
    const int n = tiers(rng);
    MarketLedger l;
    for (int i = 0; i < n; ++i) {
      l.tier_population.push_back(u(rng));
      l.tier_wealth.push_back(u(rng) < 0.3 ? 0.0 : u(rng) * 100.0);
    }
    l.tier_wealth[0] += 1.0;
    worst = std::max(worst, std::abs(gini_score(l).gini - gini_by_mad(l)));
  }
  check(worst < 1e-9, "gini trapezoid vs MAD");
  // Ideal ordering maximizes NDCG over every permutation.
  int violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<int> size(1, 6), grade(1, 5);
    const int n = size(rng);
    std::vector<JudgedDoc> d;
    for (int i = 0; i < n; ++i) d.push_back({doc("d" + std::to_string(i), {"r", "x"}), grade(rng)});
    const QuerySet q = query_of(d);
    Ranking ideal{&q, ideal_order(q)};
    const double best = ndcg_at_k(ideal, 10);
    if (!near(best, 1.0)) ++violations;
    Ranking perm = in_order(q);
    std::sort(perm.order.begin(), perm.order.end());
    do {
      if (ndcg_at_k(perm, 10) > best + 1e-12) ++violations;
    } while (std::next_permutation(perm.order.begin(), perm.order.end()));
  }
  check(violations == 0, "ndcg maximality");
  const double secs = seconds_since(t0);
  o.require(secs < 60.0, "runtime under 1 min");
  o.detail << " " << checks << " metric checks, max |gini - mad gini| = " << std::scientific
           << std::setprecision(2) << worst << std::defaultfloat;
  report(1, o, secs);
}

// ES sanity on -|theta|^2.
void criterion2() {
  const auto t0 = Clock::now();
  Outcome o;
  constexpr int kIters = 2000;
  const EsFitness fit = [](std::span<const double> t, std::uint64_t) {
    double s = 0.0;
    for (double x : t) s += x * x;
    return Evaluation{-s, {}};
  };
  int converged = 0;
  bool monotone = true;
  std::ostringstream norms;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    EsConfig c;
    c.lambda = 64;
    c.mu = 8;
    c.sigma = 0.05;
    c.mask_p = 1.0;
    c.update = false;
    c.seed = seed;
    c.workers = 1;
    ParamVector p;
    p.values.assign(441, 5.0);
    p.layout = {{1, 440}};
    double last = fit(p.values, 0).fitness;
    for (int i = 1; i <= kIters; ++i) {
      p = es_step(p, fit, c, static_cast<std::uint64_t>(i)).first;
      const double f = fit(p.values, 0).fitness;
      if (f < last) monotone = false;
      last = f;
    }
    const double norm = std::sqrt(-last);
    if (norm < 0.5) ++converged;
    norms << (seed ? ", " : "") << std::setprecision(3) << norm;
  }
  o.require(monotone, "fitness trace non-decreasing");
  o.require(converged >= 4, "final |theta| < 0.5 for >= 4 of 5 seeds");
  const double secs = seconds_since(t0);
  o.require(secs < 60.0, "runtime under 1 min");
  o.detail << " " << kIters << " iterations, final |theta| per seed from 105.0: " << norms.str()
           << "; monotone=" << (monotone ? "yes" : "no") << ", converged " << converged << "/5";
  report(2, o, secs);
}

struct Desk {
  RunConfig base;
  DatasetSplits splits;
};

Desk make_desk() {
  Desk d;
  d.base = default_run_config(Profile::kDesk);
  const Dataset data = generate(profile_gen_config(Profile::kDesk));
  d.splits = split(data, d.base.fractions, d.base.split_seed);
  return d;
}

double mean_test_ndcg(const ParamVector& params, const PolicyConfig& pc, const Dataset& test) {
  double s = 0.0;
  for (const auto& q : test.queries) {
    Rng unused(0);
    s += ndcg_at_k(rank(params, pc, q, unused), 10);
  }
  return s / static_cast<double>(test.queries.size());
}

// Relevance learnability.
void criterion3(const Desk& desk) {
  const auto t0 = Clock::now();
  Outcome o;
  RunConfig cfg = desk.base;
  cfg.policy = policy_from_tag("G");
  const TrainResult r = train(desk.splits.train, cfg.policy, cfg.resolved_spec(), cfg.es);
  const double trained = mean_test_ndcg(r.params, cfg.policy, desk.splits.test);
  const double untrained = mean_test_ndcg(r.initial, cfg.policy, desk.splits.test);
  double random = 0.0;
  constexpr int kShuffles = 5;
  for (int s = 0; s < kShuffles; ++s) {
    Rng rng = make_rng(99, {static_cast<std::uint64_t>(s)});
    for (const auto& q : desk.splits.test.queries) {
      Ranking perm{&q, {}};
      for (std::size_t i = 0; i < q.size(); ++i) perm.order.push_back(i);
      std::shuffle(perm.order.begin(), perm.order.end(), rng);
      random += ndcg_at_k(perm, 10);
    }
  }
  random /= kShuffles * static_cast<double>(desk.splits.test.queries.size());
  o.require(trained - untrained >= 0.05, "trained - untrained >= 0.05");
  o.require(trained - random >= 0.10, "trained - random >= 0.10");
  const double secs = seconds_since(t0);
  o.require(secs < 600.0, "runtime under 10 min");
  o.detail << std::setprecision(4) << " test NDCG@10 trained " << trained << ", untrained "
           << untrained << ", random permutation " << random;
  report(3, o, secs);
}

struct SweepCell {
  double gini = 0.0, incentive = 0.0, gap = 0.0;
};

std::map<std::string, std::vector<SweepCell>> g_sweep;  // policy -> per weight
const std::vector<double> kWeights = {0.0, 0.05, 0.17, 0.4};
double g_sweep_secs = 0.0;
bool g_sweep_ok = true;
std::string g_sweep_error;

void run_market_sweep(const Desk& desk) {
  const auto t0 = Clock::now();
  SweepOptions opt;
  for (double w : kWeights) {
    Preset p = custom_variant(w, 0.0);
    for (const auto& row : weight_presets()) {
      if (row.diversity == 0.0 && row.gini == w && row.incentive == w) p = row;
    }
    opt.variants.push_back(p);
  }
  opt.policies = {policy_from_tag("G"), policy_from_tag("SG")};
  opt.train_seeds = {0, 1, 2};
  opt.splits = {"validation", "test"};
  opt.write_artifacts = false;
  const SweepReport rep = run_sweep(desk.base, desk.splits, opt, "acceptance_sweep");
  for (const auto& tag : {"G", "SG"}) {
    std::vector<SweepCell> cells;
    for (const auto& v : opt.variants) {
      SweepCell cell;
      int n = 0;
      for (std::uint64_t seed : opt.train_seeds) {
        const SweepRow* val = nullptr;
        const SweepRow* test = nullptr;
        for (const auto& row : rep.rows) {
          if (row.variant != v.id || row.policy != tag || row.train_seed != seed) continue;
          if (!row.error.empty()) {
            g_sweep_ok = false;
            g_sweep_error = row.error;
          }
          (row.split == "test" ? test : val) = &row;
        }
        if (!val || !test || !g_sweep_ok) continue;
        cell.gini += test->metrics.at("gini_score").mean;
        cell.incentive += test->metrics.at("incentive").mean;
        cell.gap += std::abs(val->metrics.at("gini_score").mean - test->metrics.at("gini_score").mean);
        ++n;
      }
      if (n > 0) {
        cell.gini /= n;
        cell.incentive /= n;
        cell.gap /= n;
      }
      cells.push_back(cell);
    }
    g_sweep[tag] = cells;
  }
  g_sweep_secs = seconds_since(t0);
}

// At most one adjacent decrease, and no decrease larger than 0.02.
bool trend_ok(const std::vector<double>& s) {
  int inversions = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    const double drop = s[i - 1] - s[i];
    if (drop > 0.0) {
      ++inversions;
      if (drop > 0.02) return false;
    }
  }
  return inversions <= 1;
}

std::string series(const std::vector<double>& s) {
  std::ostringstream os;
  os << std::setprecision(4) << "[";
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? ", " : "") << s[i];
  os << "]";
  return os.str();
}

// Market-weight trend, G-ES over weights {0, 0.05, 0.17, 0.4}.
void criterion4() {
  Outcome o;
  o.require(g_sweep_ok, "sweep runs succeed: " + g_sweep_error);
  std::vector<double> gini, inc;
  for (const auto& c : g_sweep["G"]) {
    gini.push_back(c.gini);
    inc.push_back(c.incentive);
  }
  o.require(trend_ok(gini), "gini_score non-decreasing in weight");
  o.require(trend_ok(inc), "incentive non-decreasing in weight");
  o.require(gini.back() - gini.front() >= 0.05, "gini_score(0.4) - gini_score(0) >= 0.05");
  o.require(g_sweep_secs < 45 * 60.0, "sweep runtime under 45 min");
  std::vector<double> sg_gini;
  for (const auto& c : g_sweep["SG"]) sg_gini.push_back(c.gini);
  o.detail << " G-ES test gini_score " << series(gini) << ", incentive " << series(inc)
           << " (SG-ES gini_score " << series(sg_gini) << ")";
  report(4, o, g_sweep_secs);
}

// Joint optimization versus tuned MMR at -{0.17,0.17}.
void criterion5(const Desk& desk) {
  const auto t0 = Clock::now();
  Outcome o;
  RunConfig base = desk.base;
  base.preset = "-{0.17,0.17}";
  const Checkpoint rel_model = train_relevance_model(desk.base, desk.splits);
  const RelevanceTable rel_val = checkpoint_scores(desk.splits.validation, rel_model);
  RelevanceTable rel = checkpoint_scores(desk.splits.test, rel_model);
  rel.insert(rel_val.begin(), rel_val.end());
  const auto grid = default_lambda_grid();
  const MmrOutcome mmr = run_baseline_mmr(base, desk.splits, rel, grid, {"test"});
  const auto& m = mmr.evaluations.at(0).metrics;
  o.detail << std::setprecision(4) << " MMR(lambda=" << mmr.best_lambda
           << ") ndcg " << m.at("ndcg").mean << " gini_score " << m.at("gini_score").mean
           << " incentive " << m.at("incentive").mean << ";";
  for (const std::string tag : {"G", "SG"}) {
    RunConfig cfg = base;
    cfg.policy = policy_from_tag(tag);
    const TrainResult r = train(desk.splits.train, cfg.policy, cfg.resolved_spec(), cfg.es);
    const SplitEvaluation e = evaluate_split({cfg.policy, r.params}, desk.splits.test, "test",
                                             cfg.resolved_spec(), cfg.eval_seeds, cfg.eval_seed);
    const auto& x = e.metrics;
    o.require(x.at("gini_score").mean > m.at("gini_score").mean, tag + "-ES gini_score > MMR");
    o.require(x.at("incentive").mean > m.at("incentive").mean, tag + "-ES incentive > MMR");
    o.require(x.at("ndcg").mean >= m.at("ndcg").mean - 0.08, tag + "-ES ndcg within 0.08 of MMR");
    o.detail << " " << tag << "-ES ndcg " << x.at("ndcg").mean << " gini_score "
             << x.at("gini_score").mean << " incentive " << x.at("incentive").mean << ";";
  }
  report(5, o, seconds_since(t0));
}

// Validation/test gini gap of SG-ES versus G-ES over the sweep.
void criterion6() {
  Outcome o;
  o.require(g_sweep_ok, "sweep runs succeed: " + g_sweep_error);
  auto mean_gap = [](const std::vector<SweepCell>& cells) {
    double s = 0.0;
    for (const auto& c : cells) s += c.gap;
    return s / static_cast<double>(cells.size());
  };
  const double g = mean_gap(g_sweep["G"]);
  const double sg = mean_gap(g_sweep["SG"]);
  o.require(sg <= g + 0.01, "SG gap <= G gap + 0.01");
  o.detail << std::setprecision(4) << " mean |validation - test| gini_score gap: G-ES " << g
           << ", SG-ES " << sg;
  report(6, o, 0.0);
}

// Determinism and seed-dependent spread.
void criterion7() {
  const auto t0 = Clock::now();
  Outcome o;
  auto pipeline = [] {
    GenConfig g = profile_gen_config(Profile::kDesk);
    g.num_queries = 120;
    const Dataset data = generate(g);
    RunConfig cfg = default_run_config(Profile::kDesk);
    cfg.es.iters = 10;
    cfg.policy = policy_from_tag("G");
    const DatasetSplits s = split(data, cfg.fractions, cfg.split_seed);
    const TrainResult r = train(s.train, cfg.policy, cfg.resolved_spec(), cfg.es);
    const SplitEvaluation e = evaluate_split({cfg.policy, r.params}, s.test, "test",
                                             preset_spec("-{0.17,0.17}"), 5, 0);
    std::ostringstream os;
    os << dataset_to_json(data) << evaluation_to_json(e).dump();
    for (double v : r.params.values) os << std::hexfloat << v << ' ';
    for (const auto& h : r.history) os << std::hexfloat << h.combined << h.parent_fitness << ' ';
    return os.str();
  };
  const std::string a = pipeline();
  const std::string b = pipeline();
  o.require(a == b, "two pipeline runs bit-identical");

  GenConfig g = profile_gen_config(Profile::kDesk);
  g.num_queries = 100;
  const Dataset data = generate(g);
  std::ostringstream spread;
  for (const std::string tag : {"G", "P", "SG", "SP"}) {
    const PolicyConfig pc = policy_from_tag(tag);
    const SplitEvaluation e =
        evaluate_split({pc, init_params(pc, 5)}, data, "all", preset_spec("-{0.17,0.17}"), 5, 0);
    double max_std = 0.0;
    for (const auto& [name, stat] : e.metrics) max_std = std::max(max_std, stat.std);
    const bool positive = e.metrics.at("combined").std > 0.0;
    o.require(pc.stochastic() ? positive : max_std == 0.0,
              tag + (pc.stochastic() ? " std > 0" : " std == 0"));
    spread << " " << tag << " combined std " << std::setprecision(3)
           << e.metrics.at("combined").std;
  }
  o.detail << " pipeline bit-identical=" << (a == b ? "yes" : "no") << ";" << spread.str();
  report(7, o, seconds_since(t0));
}

// Greedy equals pointwise under a state-independent value function.
void criterion8() {
  const auto t0 = Clock::now();
  Outcome o;
  GenConfig g = profile_gen_config(Profile::kDesk);
  g.num_queries = 1000;
  g.docs_per_query = 30;
  g.seed = 8;
  const Dataset data = generate(g);
  PolicyConfig greedy = policy_from_tag("G");
  greedy.hidden_dims = {};
  PolicyConfig pointwise = greedy;
  pointwise.kind = PolicyKind::kPointwise;
  int mismatches = 0;
  for (std::size_t i = 0; i < data.queries.size(); ++i) {
    const ParamVector p = init_params(greedy, 1000 + i);
    Rng a(0), b(0);
    if (rank(p, greedy, data.queries[i], a).order != rank(p, pointwise, data.queries[i], b).order) {
      ++mismatches;
    }
  }
  o.require(mismatches == 0, "greedy == pointwise on every query");
  o.detail << " " << data.queries.size() << " queries, " << mismatches << " mismatches";
  report(8, o, seconds_since(t0));
}

}  // namespace

int main() {
  set_log_enabled(false);
  criterion1();
  criterion2();
  const Desk desk = make_desk();
  criterion3(desk);
  run_market_sweep(desk);
  criterion4();
  criterion5(desk);
  criterion6();
  criterion7();
  criterion8();
  std::cout << (g_failures == 0 ? "all criteria passed" : std::to_string(g_failures) + " criteria failed")
            << std::endl;
  return g_failures == 0 ? 0 : 1;
}
