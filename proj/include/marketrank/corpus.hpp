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

// Marketplace search corpus: queries with graded documents plus the seller
// and price metadata the market-level metrics need.

#ifndef MARKETRANK_CORPUS_HPP_
#define MARKETRANK_CORPUS_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace marketrank {

inline constexpr int kMinGrade = 1;
inline constexpr int kMaxGrade = 5;

struct Document {
  std::string doc_id;
  std::vector<double> features;
  // Category node ids from root to leaf; the last entry is the leaf.
  std::vector<std::string> taxonomy_path;
  int seller_tier = 1;  // 1..tier_count
  double price = 1.0;
  bool premium = false;

  const std::string& leaf() const { return taxonomy_path.back(); }
  bool operator==(const Document&) const = default;
};

struct JudgedDoc {
  Document doc;
  int grade = kMinGrade;
  bool operator==(const JudgedDoc&) const = default;
};

struct QuerySet {
  std::string query_id;
  double traffic_weight = 1.0;
  double purchase_count = 0.0;
  std::vector<JudgedDoc> judged_docs;
  // Pr(leaf | query).
  std::map<std::string, double> topic_dist;

  std::size_t size() const { return judged_docs.size(); }
  bool operator==(const QuerySet&) const = default;
};

struct Dataset {
  std::vector<QuerySet> queries;
  int feature_dim = 1;
  std::vector<std::string> categories;
  int tier_count = 1;
  std::vector<double> tier_population;
  // Observation probability per rank position, index 0 = position 1.
  std::vector<double> observation_model;

  // O(position); positions past the table read as 0.
  double observation(int position) const;
  const QuerySet* find_query(const std::string& query_id) const;
  bool operator==(const Dataset&) const = default;
};

// Raised for unreadable or malformed dataset files. The message names the
// line (when known) and the offending field.
class DatasetFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a dataset fails validation at a load/save boundary.
class DatasetInvalidError : public std::runtime_error {
 public:
  explicit DatasetInvalidError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// Returns one description per violated invariant; empty means valid.
std::vector<std::string> validate(const Dataset& dataset);

Dataset load_dataset(const std::filesystem::path& path);
void save_dataset(const Dataset& dataset, const std::filesystem::path& path);

// JSON text handling shared by load/save.
Dataset parse_dataset_json(const std::string& text);
std::string dataset_to_json(const Dataset& dataset);

struct SplitFractions {
  double train = 0.7;
  double validation = 0.15;
  double test = 0.15;
};

struct DatasetSplits {
  Dataset train;
  Dataset validation;
  Dataset test;
};

// Query-level partition, deterministic in seed. Queries keep their original
// relative order inside each split.
DatasetSplits split(const Dataset& dataset, SplitFractions fractions,
                    std::uint64_t seed);

// Grade-weighted empirical distribution of taxonomy leaves.
std::map<std::string, double> grade_weighted_topics(
    const std::vector<JudgedDoc>& docs);

// Equal-population tiers.
std::vector<double> uniform_tier_population(int tier_count);

// Position weights decaying by `ratio`, normalized over `positions` slots.
std::vector<double> geometric_observation_model(double ratio, int positions);

struct TsvImportOptions {
  // Added to every grade on import, e.g. 1 for 0-based judgments.
  int grade_offset = 0;
};

// Imports `<grade> qid:<id> 1:<v> 2:<v> ... #<doc_id>` lines. Marketplace
// metadata is defaulted: one "uncategorized" leaf, a single tier, unit
// price, unit traffic and purchases.
Dataset import_letor_tsv(const std::filesystem::path& path,
                         const TsvImportOptions& options = {});
Dataset parse_letor_tsv(const std::string& text,
                        const TsvImportOptions& options = {});

}  // namespace marketrank

#endif  // MARKETRANK_CORPUS_HPP_
