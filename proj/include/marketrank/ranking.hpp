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

#ifndef MARKETRANK_RANKING_HPP_
#define MARKETRANK_RANKING_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "marketrank/corpus.hpp"

namespace marketrank {

// Ordered references into one query's judged docs. A Ranking does not own
// its query; the QuerySet must outlive it.
struct Ranking {
  const QuerySet* query = nullptr;
  std::vector<std::size_t> order;  // indices into query->judged_docs

  const std::string& query_id() const { return query->query_id; }
  std::size_t size() const { return order.size(); }
  const JudgedDoc& at(std::size_t position0) const {
    return query->judged_docs[order[position0]];
  }
  // Grades in rank order, truncated to the first k positions.
  std::vector<int> grades(std::size_t k) const;
};

// No duplicates and every index inside the query's judged set.
bool is_valid(const Ranking& ranking);

// Indices sorted by grade descending, doc_id ascending.
std::vector<std::size_t> ideal_order(const QuerySet& query);

}  // namespace marketrank

#endif  // MARKETRANK_RANKING_HPP_
