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

#include "marketrank/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <locale>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"
#include "marketrank/random.hpp"

namespace marketrank {

using nlohmann::json;

namespace {

constexpr double kSumTolerance = 1e-9;

std::string join_violations(const std::vector<std::string>& v) {
  std::string out = "dataset failed validation:";
  const std::size_t shown = std::min<std::size_t>(v.size(), 20);
  for (std::size_t i = 0; i < shown; ++i) out += "\n  " + v[i];
  if (v.size() > shown) {
    out += "\n  ... and " + std::to_string(v.size() - shown) + " more";
  }
  return out;
}

// Line number (1-based) of a byte offset in text.
std::size_t line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + byte, '\n'));
}

[[noreturn]] void field_error(const std::string& where,
                              const std::string& what) {
  throw DatasetFormatError(where + ": " + what);
}

const json& require(const json& obj, const char* key,
                    const std::string& where) {
  if (!obj.is_object()) field_error(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) field_error(where, std::string("missing field '") + key + "'");
  return *it;
}

double get_real(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number()) field_error(where + "." + key, "expected a number");
  return v.get<double>();
}

int get_int(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number_integer()) field_error(where + "." + key, "expected an integer");
  return v.get<int>();
}

std::string get_string(const json& obj, const char* key,
                       const std::string& where) {
  const json& v = require(obj, key, where);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  field_error(where + "." + key, "expected a string");
}

std::vector<double> get_reals(const json& obj, const char* key,
                              const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_array()) field_error(where + "." + key, "expected an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      field_error(where + "." + key + "[" + std::to_string(i) + "]",
                  "expected a number");
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

std::vector<std::string> get_strings(const json& obj, const char* key,
                                     const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_array()) field_error(where + "." + key, "expected an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string()) {
      field_error(where + "." + key + "[" + std::to_string(i) + "]",
                  "expected a string");
    }
    out.push_back(v[i].get<std::string>());
  }
  return out;
}

JudgedDoc parse_doc(const json& j, const std::string& where) {
  JudgedDoc jd;
  jd.doc.doc_id = get_string(j, "doc_id", where);
  jd.grade = get_int(j, "grade", where);
  jd.doc.features = get_reals(j, "features", where);
  jd.doc.taxonomy_path = get_strings(j, "taxonomy_path", where);
  jd.doc.seller_tier = get_int(j, "seller_tier", where);
  jd.doc.price = get_real(j, "price", where);
  const json& premium = require(j, "premium", where);
  if (!premium.is_boolean()) field_error(where + ".premium", "expected a boolean");
  jd.doc.premium = premium.get<bool>();
  return jd;
}

QuerySet parse_query(const json& j, const std::string& where) {
  QuerySet q;
  q.query_id = get_string(j, "query_id", where);
  q.traffic_weight = get_real(j, "traffic_weight", where);
  q.purchase_count = get_real(j, "purchase_count", where);
  const json& topics = require(j, "topic_dist", where);
  if (!topics.is_object()) field_error(where + ".topic_dist", "expected an object");
  for (const auto& [leaf, p] : topics.items()) {
    if (!p.is_number()) field_error(where + ".topic_dist." + leaf, "expected a number");
    q.topic_dist[leaf] = p.get<double>();
  }
  const json& docs = require(j, "docs", where);
  if (!docs.is_array()) field_error(where + ".docs", "expected an array");
  q.judged_docs.reserve(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    q.judged_docs.push_back(
        parse_doc(docs[i], where + ".docs[" + std::to_string(i) + "]"));
  }
  return q;
}

json doc_to_json(const JudgedDoc& jd) {
  return json{{"doc_id", jd.doc.doc_id},
              {"grade", jd.grade},
              {"features", jd.doc.features},
              {"taxonomy_path", jd.doc.taxonomy_path},
              {"seller_tier", jd.doc.seller_tier},
              {"price", jd.doc.price},
              {"premium", jd.doc.premium}};
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace

double Dataset::observation(int position) const {
  if (position < 1 || position > static_cast<int>(observation_model.size())) {
    return 0.0;
  }
  return observation_model[static_cast<std::size_t>(position - 1)];
}

const QuerySet* Dataset::find_query(const std::string& query_id) const {
  for (const auto& q : queries) {
    if (q.query_id == query_id) return &q;
  }
  return nullptr;
}

DatasetInvalidError::DatasetInvalidError(std::vector<std::string> violations)
    : std::runtime_error(join_violations(violations)),
      violations_(std::move(violations)) {}

std::vector<std::string> validate(const Dataset& d) {
  std::vector<std::string> out;
  if (d.feature_dim < 1) out.push_back("feature_dim must be positive");
  if (d.tier_count < 1) out.push_back("tier_count must be positive");
  if (d.categories.empty()) out.push_back("category set is empty");
  if (d.queries.empty()) out.push_back("dataset has no queries");

  if (static_cast<int>(d.tier_population.size()) != d.tier_count) {
    out.push_back("tier_population has " +
                  std::to_string(d.tier_population.size()) +
                  " entries, expected tier_count=" +
                  std::to_string(d.tier_count));
  }
  if (!d.tier_population.empty()) {
    double sum = 0.0;
    bool negative = false;
    for (double x : d.tier_population) {
      sum += x;
      negative |= !finite_nonneg(x);
    }
    if (negative) out.push_back("tier_population has negative or non-finite entries");
    if (std::abs(sum - 1.0) > kSumTolerance) {
      out.push_back("tier_population sums to " + std::to_string(sum) + ", not 1");
    }
  }
  for (std::size_t p = 0; p < d.observation_model.size(); ++p) {
    const double o = d.observation_model[p];
    if (!(o >= 0.0 && o <= 1.0)) {
      out.push_back("observation_model[" + std::to_string(p + 1) +
                    "] outside [0,1]");
    }
  }

  const std::set<std::string> cats(d.categories.begin(), d.categories.end());
  if (cats.size() != d.categories.size()) out.push_back("category set has duplicates");

  std::set<std::string> query_ids;
  for (const auto& q : d.queries) {
    const std::string qname = "query '" + q.query_id + "'";
    if (!query_ids.insert(q.query_id).second) out.push_back(qname + ": duplicate query_id");
    if (!finite_nonneg(q.traffic_weight)) out.push_back(qname + ": traffic_weight must be >= 0");
    if (!finite_nonneg(q.purchase_count)) out.push_back(qname + ": purchase_count must be >= 0");
    if (q.judged_docs.empty()) out.push_back(qname + ": no judged docs");

    double topic_sum = 0.0;
    for (const auto& [leaf, p] : q.topic_dist) {
      if (!finite_nonneg(p)) out.push_back(qname + ": topic_dist['" + leaf + "'] negative");
      if (!cats.contains(leaf)) out.push_back(qname + ": topic '" + leaf + "' not in category set");
      topic_sum += p;
    }
    if (std::abs(topic_sum - 1.0) > kSumTolerance) {
      out.push_back(qname + ": topic_dist sums to " + std::to_string(topic_sum) + ", not 1");
    }

    std::set<std::string> doc_ids;
    for (const auto& jd : q.judged_docs) {
      const Document& doc = jd.doc;
      const std::string dname = qname + " doc '" + doc.doc_id + "'";
      if (!doc_ids.insert(doc.doc_id).second) out.push_back(dname + ": duplicate doc_id");
      if (static_cast<int>(doc.features.size()) != d.feature_dim) {
        out.push_back(dname + ": has " + std::to_string(doc.features.size()) +
                      " features, expected " + std::to_string(d.feature_dim));
      }
      if (std::any_of(doc.features.begin(), doc.features.end(),
                      [](double x) { return !std::isfinite(x); })) {
        out.push_back(dname + ": non-finite feature");
      }
      if (jd.grade < kMinGrade || jd.grade > kMaxGrade) {
        out.push_back(dname + ": grade " + std::to_string(jd.grade) +
                      " outside 1..5");
      }
      if (doc.seller_tier < 1 || doc.seller_tier > d.tier_count) {
        out.push_back(dname + ": seller_tier " + std::to_string(doc.seller_tier) +
                      " outside 1.." + std::to_string(d.tier_count));
      }
      if (!(std::isfinite(doc.price) && doc.price > 0.0)) {
        out.push_back(dname + ": price must be positive");
      }
      if (doc.taxonomy_path.empty()) {
        out.push_back(dname + ": empty taxonomy_path");
      } else if (!cats.contains(doc.leaf())) {
        out.push_back(dname + ": leaf '" + doc.leaf() + "' not in category set");
      }
    }
  }
  return out;
}

Dataset parse_dataset_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DatasetFormatError("line " + std::to_string(line_of(text, e.byte)) +
                             ": " + e.what());
  }
  Dataset d;
  const std::string top = "dataset";
  d.feature_dim = get_int(root, "feature_dim", top);
  d.categories = get_strings(root, "categories", top);
  d.tier_count = get_int(root, "tier_count", top);
  d.tier_population = get_reals(root, "tier_population", top);
  d.observation_model = get_reals(root, "observation_model", top);
  const json& queries = require(root, "queries", top);
  if (!queries.is_array()) field_error("dataset.queries", "expected an array");
  d.queries.reserve(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) {
    d.queries.push_back(
        parse_query(queries[i], "queries[" + std::to_string(i) + "]"));
  }
  return d;
}

std::string dataset_to_json(const Dataset& d) {
  // One document object per line keeps large files diffable.
  std::ostringstream out;
  out << "{\n";
  out << "\"feature_dim\": " << d.feature_dim << ",\n";
  out << "\"categories\": " << json(d.categories).dump() << ",\n";
  out << "\"tier_count\": " << d.tier_count << ",\n";
  out << "\"tier_population\": " << json(d.tier_population).dump() << ",\n";
  out << "\"observation_model\": " << json(d.observation_model).dump() << ",\n";
  out << "\"queries\": [";
  for (std::size_t qi = 0; qi < d.queries.size(); ++qi) {
    const QuerySet& q = d.queries[qi];
    json topics = json::object();
    for (const auto& [leaf, p] : q.topic_dist) topics[leaf] = p;
    out << (qi ? ",\n" : "\n");
    out << "{\"query_id\": " << json(q.query_id).dump()
        << ", \"traffic_weight\": " << json(q.traffic_weight).dump()
        << ", \"purchase_count\": " << json(q.purchase_count).dump()
        << ", \"topic_dist\": " << topics.dump() << ", \"docs\": [";
    for (std::size_t di = 0; di < q.judged_docs.size(); ++di) {
      out << (di ? ",\n  " : "\n  ") << doc_to_json(q.judged_docs[di]).dump();
    }
    out << "]}";
  }
  out << "\n]\n}\n";
  return out.str();
}

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetFormatError("cannot open dataset file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  Dataset d = parse_dataset_json(buf.str());
  auto violations = validate(d);
  if (!violations.empty()) throw DatasetInvalidError(std::move(violations));
  return d;
}

void save_dataset(const Dataset& dataset, const std::filesystem::path& path) {
  auto violations = validate(dataset);
  if (!violations.empty()) throw DatasetInvalidError(std::move(violations));
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write dataset file " + path.string());
  out << dataset_to_json(dataset);
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

DatasetSplits split(const Dataset& dataset, SplitFractions f,
                    std::uint64_t seed) {
  const double parts[3] = {f.train, f.validation, f.test};
  for (double p : parts) {
    if (!(p > 0.0)) throw std::invalid_argument("split fractions must be positive");
  }
  if (std::abs(f.train + f.validation + f.test - 1.0) > kSumTolerance) {
    throw std::invalid_argument("split fractions must sum to 1");
  }
  const std::size_t n = dataset.queries.size();
  if (n < 3) {
    throw std::invalid_argument("need at least 3 queries to split, have " +
                                std::to_string(n));
  }

  // Largest-remainder apportionment, then make sure no split is empty.
  std::size_t counts[3];
  double rema[3];
  std::size_t assigned = 0;
  for (int i = 0; i < 3; ++i) {
    const double exact = parts[i] * static_cast<double>(n);
    counts[i] = static_cast<std::size_t>(std::floor(exact + 1e-9));
    rema[i] = exact - static_cast<double>(counts[i]);
    assigned += counts[i];
  }
  while (assigned < n) {
    const int best = static_cast<int>(std::max_element(rema, rema + 3) - rema);
    ++counts[best];
    rema[best] = -1.0;
    ++assigned;
  }
  for (int i = 0; i < 3; ++i) {
    if (counts[i] == 0) {
      const int donor = static_cast<int>(std::max_element(counts, counts + 3) - counts);
      --counts[donor];
      ++counts[i];
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng = make_rng(seed, {label_hash("split")});
  std::shuffle(order.begin(), order.end(), rng);

  auto take = [&](std::size_t begin, std::size_t count) {
    std::vector<std::size_t> idx(order.begin() + static_cast<std::ptrdiff_t>(begin),
                                 order.begin() + static_cast<std::ptrdiff_t>(begin + count));
    std::sort(idx.begin(), idx.end());
    Dataset out = dataset;
    out.queries.clear();
    out.queries.reserve(count);
    for (std::size_t i : idx) out.queries.push_back(dataset.queries[i]);
    return out;
  };
  DatasetSplits s;
  s.train = take(0, counts[0]);
  s.validation = take(counts[0], counts[1]);
  s.test = take(counts[0] + counts[1], counts[2]);
  return s;
}

std::map<std::string, double> grade_weighted_topics(
    const std::vector<JudgedDoc>& docs) {
  std::map<std::string, double> dist;
  double total = 0.0;
  for (const auto& jd : docs) {
    if (jd.doc.taxonomy_path.empty()) continue;
    dist[jd.doc.leaf()] += jd.grade;
    total += jd.grade;
  }
  if (total > 0.0) {
    for (auto& [leaf, p] : dist) p /= total;
  }
  return dist;
}

std::vector<double> uniform_tier_population(int tier_count) {
  return std::vector<double>(static_cast<std::size_t>(std::max(tier_count, 0)),
                             1.0 / static_cast<double>(tier_count));
}

std::vector<double> geometric_observation_model(double ratio, int positions) {
  std::vector<double> o(static_cast<std::size_t>(positions));
  double w = 1.0, sum = 0.0;
  for (auto& x : o) {
    x = w;
    sum += w;
    w *= ratio;
  }
  for (auto& x : o) x /= sum;
  return o;
}

Dataset parse_letor_tsv(const std::string& text, const TsvImportOptions& options) {
  static const std::string kLeaf = "uncategorized";
  Dataset d;
  d.categories = {kLeaf};
  d.tier_count = 1;
  d.tier_population = uniform_tier_population(1);
  d.observation_model = geometric_observation_model(0.7, 10);

  std::map<std::string, std::size_t> query_index;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  int max_feature = 0;
  auto fail = [&](const std::string& field, const std::string& what) {
    throw DatasetFormatError("line " + std::to_string(line_no) + ", field " +
                             field + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::string doc_id;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      doc_id = line.substr(hash + 1);
      line.resize(hash);
      const auto b = doc_id.find_first_not_of(" \t\r");
      const auto e = doc_id.find_last_not_of(" \t\r");
      doc_id = b == std::string::npos ? "" : doc_id.substr(b, e - b + 1);
    }
    std::istringstream tokens(line);
    std::string grade_tok;
    if (!(tokens >> grade_tok)) continue;  // blank or comment-only line

    JudgedDoc jd;
    std::size_t used = 0;
    try {
      jd.grade = std::stoi(grade_tok, &used) + options.grade_offset;
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != grade_tok.size()) fail("grade", "not an integer: '" + grade_tok + "'");
    if (jd.grade < kMinGrade || jd.grade > kMaxGrade) {
      fail("grade", "grade " + std::to_string(jd.grade) + " outside 1..5");
    }

    std::string qid_tok;
    if (!(tokens >> qid_tok) || qid_tok.rfind("qid:", 0) != 0 || qid_tok.size() == 4) {
      fail("qid", "expected qid:<id>");
    }
    const std::string qid = qid_tok.substr(4);

    std::map<int, double> feats;
    std::string tok;
    while (tokens >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos) fail(tok, "expected <index>:<value>");
      int index = 0;
      double value = 0.0;
      try {
        std::size_t digits = 0;
        index = std::stoi(tok.substr(0, colon), &digits);
        if (digits != colon) throw std::invalid_argument("index");
        // Classic locale keeps the decimal point fixed regardless of the
        // process locale.
        std::istringstream vs(tok.substr(colon + 1));
        vs.imbue(std::locale::classic());
        if (!(vs >> value) || !vs.eof()) throw std::invalid_argument("value");
      } catch (const std::exception&) {
        fail(tok, "malformed feature");
      }
      if (index < 1) fail(tok, "feature index must be >= 1");
      feats[index] = value;
      max_feature = std::max(max_feature, index);
    }

    auto [it, inserted] = query_index.try_emplace(qid, d.queries.size());
    if (inserted) {
      QuerySet q;
      q.query_id = qid;
      q.traffic_weight = 1.0;
      q.purchase_count = 1.0;
      d.queries.push_back(std::move(q));
    }
    QuerySet& q = d.queries[it->second];
    jd.doc.doc_id = doc_id.empty() ? "line" + std::to_string(line_no) : doc_id;
    jd.doc.taxonomy_path = {kLeaf};
    jd.doc.seller_tier = 1;
    jd.doc.price = 1.0;
    jd.doc.premium = false;
    // Features are stored sparsely until the final width is known.
    jd.doc.features.assign(static_cast<std::size_t>(feats.empty() ? 0 : feats.rbegin()->first), 0.0);
    for (const auto& [index, value] : feats) {
      jd.doc.features[static_cast<std::size_t>(index - 1)] = value;
    }
    q.judged_docs.push_back(std::move(jd));
  }
  d.feature_dim = std::max(max_feature, 1);
  for (auto& q : d.queries) {
    for (auto& jd : q.judged_docs) {
      jd.doc.features.resize(static_cast<std::size_t>(d.feature_dim), 0.0);
    }
    q.topic_dist = grade_weighted_topics(q.judged_docs);
  }
  return d;
}

Dataset import_letor_tsv(const std::filesystem::path& path,
                         const TsvImportOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetFormatError("cannot open TSV file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  Dataset d = parse_letor_tsv(buf.str(), options);
  auto violations = validate(d);
  if (!violations.empty()) throw DatasetInvalidError(std::move(violations));
  return d;
}

}  // namespace marketrank
