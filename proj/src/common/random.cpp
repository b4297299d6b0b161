//
// Copyright 2026 The TTShield Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
#include "common/random.hpp"

#include <algorithm>
#include <numeric>
#include <string_view>

namespace ttshield {
namespace {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t DeriveSeed(std::uint64_t master,
                         std::initializer_list<std::uint64_t> tags) {
  std::uint64_t state = SplitMix64(master);
  for (std::uint64_t tag : tags) state = SplitMix64(state ^ SplitMix64(tag + 1));
  return state;
}

std::uint64_t HashTag(std::string_view text) {
  // FNV-1a
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<std::size_t> SampleWithoutReplacement(std::size_t population,
                                                  std::size_t count, Rng& rng) {
  std::vector<std::size_t> idx(population);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  // Partial Fisher-Yates.
  for (std::size_t i = 0; i < count && i < population; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, population - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  idx.resize(std::min(count, population));
  return idx;
}

std::vector<std::size_t> Permutation(std::size_t n, Rng& rng) {
  return SampleWithoutReplacement(n, n, rng);
}

double StandardNormal(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  return normal(rng);
}

double Uniform01(Rng& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  return uniform(rng);
}

}  // namespace ttshield
