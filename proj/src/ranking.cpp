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

#include "marketrank/ranking.hpp"

#include <algorithm>
#include <numeric>

namespace marketrank {

std::vector<int> Ranking::grades(std::size_t k) const {
  const std::size_t n = std::min(k, order.size());
  std::vector<int> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = at(i).grade;
  return out;
}

bool is_valid(const Ranking& ranking) {
  if (ranking.query == nullptr) return false;
  const std::size_t n = ranking.query->judged_docs.size();
  std::vector<bool> seen(n, false);
  for (std::size_t idx : ranking.order) {
    if (idx >= n || seen[idx]) return false;
    seen[idx] = true;
  }
  return true;
}

std::vector<std::size_t> ideal_order(const QuerySet& query) {
  std::vector<std::size_t> order(query.judged_docs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& da = query.judged_docs[a];
    const auto& db = query.judged_docs[b];
    if (da.grade != db.grade) return da.grade > db.grade;
    return da.doc.doc_id < db.doc.doc_id;
  });
  return order;
}

}  // namespace marketrank
