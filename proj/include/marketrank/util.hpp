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

#ifndef MARKETRANK_UTIL_HPP_
#define MARKETRANK_UTIL_HPP_

#include <cstddef>
#include <functional>
#include <string_view>

namespace marketrank {

// Runs fn(i) for i in [0, n) on up to `workers` threads. Each index is
// handled exactly once; fn must not share mutable state across indices.
// The first exception thrown by any fn(i) is rethrown on the caller.
void parallel_for(std::size_t n, std::size_t workers,
                  const std::function<void(std::size_t)>& fn);

// Worker count used when a config asks for 0 ("auto").
std::size_t default_workers();

void log_warning(std::string_view message);
void log_info(std::string_view message);
// Warnings and info lines go to stderr unless silenced.
void set_log_enabled(bool enabled);

}  // namespace marketrank

#endif  // MARKETRANK_UTIL_HPP_
