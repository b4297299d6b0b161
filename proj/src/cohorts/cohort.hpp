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
#ifndef TTSHIELD_COHORTS_COHORT_HPP_
#define TTSHIELD_COHORTS_COHORT_HPP_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "common/dataset.hpp"

namespace ttshield::cohorts {

inline constexpr std::size_t kContinuousBlock = 5;  // TMB, PSTH, Albumin, NLR, Age
inline constexpr std::size_t kCancerTypes = 16;
inline constexpr std::size_t kFeatureCount = kContinuousBlock + kCancerTypes;  // 21

inline constexpr std::size_t kTmb = 0;
inline constexpr std::size_t kPsth = 1;
inline constexpr std::size_t kAlbumin = 2;
inline constexpr std::size_t kNlr = 3;
inline constexpr std::size_t kAge = 4;
inline constexpr std::size_t kFirstCancerType = 5;

// Column names in CSV order, excluding Response.
const std::vector<std::string>& FeatureNames();
// True for PSTH and the cancer-type flags.
bool IsBinaryFeature(std::size_t feature);
// Feature index of 1-based cancer type t.
std::size_t CancerTypeFeature(int type);

struct Cohort {
  std::string name;
  Dataset data;

  std::size_t size() const { return data.size(); }
  double response_rate() const;
  // 1-based cancer type of row i.
  int cancer_type(std::size_t row) const;
};

// Checks the schema invariants; throws kValidation naming the row/column.
void ValidateCohort(const Cohort& cohort);

struct DatasetUnion {
  std::vector<std::size_t> members;  // sorted cohort indices
  std::vector<int> indicator;        // multi-hot over all cohorts
  Dataset data;
};

DatasetUnion Union(std::span<const Cohort> cohorts, std::span<const std::size_t> members);

// Every nonempty member set of size <= max_size (0 = no cap), ordered by size
// then lexicographically.
std::vector<std::vector<std::size_t>> EnumerateUnions(std::size_t cohort_count,
                                                      std::size_t max_size);

// All cohorts stacked, in order.
Dataset Pool(std::span<const Cohort> cohorts);

}  // namespace ttshield::cohorts

#endif  // TTSHIELD_COHORTS_COHORT_HPP_
