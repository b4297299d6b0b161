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
#ifndef TTSHIELD_COMMON_RANDOM_HPP_
#define TTSHIELD_COMMON_RANDOM_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace ttshield {

using Rng = std::mt19937_64;

// Deterministic sub-seed derivation. Every seeded job in the toolkit gets its
// seed from DeriveSeed(master, {tags...}) so one master seed fixes all runs.
std::uint64_t DeriveSeed(std::uint64_t master,
                         std::initializer_list<std::uint64_t> tags);

// Hash of an arbitrary string, used as a seed tag.
std::uint64_t HashTag(std::string_view text);

// Uniform sample of `count` distinct indices from [0, population), in draw
// order.
std::vector<std::size_t> SampleWithoutReplacement(std::size_t population,
                                                  std::size_t count, Rng& rng);

std::vector<std::size_t> Permutation(std::size_t n, Rng& rng);

double StandardNormal(Rng& rng);
double Uniform01(Rng& rng);

}  // namespace ttshield

#endif  // TTSHIELD_COMMON_RANDOM_HPP_
