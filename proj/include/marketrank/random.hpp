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

#ifndef MARKETRANK_RANDOM_HPP_
#define MARKETRANK_RANDOM_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace marketrank {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives an independent stream seed from a root seed and a path of
// integer coordinates, e.g. derive_seed(seed, {iteration, child}).
constexpr std::uint64_t derive_seed(std::uint64_t root,
                                    std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = mix64(root);
  for (std::uint64_t p : path) h = mix64(h ^ mix64(p + 0x632be59bd9b4e019ULL));
  return h;
}

// FNV-1a, used to turn stream labels into path coordinates.
constexpr std::uint64_t label_hash(std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline Rng make_rng(std::uint64_t root,
                    std::initializer_list<std::uint64_t> path = {}) {
  return Rng(derive_seed(root, path));
}

}  // namespace marketrank

#endif  // MARKETRANK_RANDOM_HPP_
