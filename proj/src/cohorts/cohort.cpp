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
#include "cohorts/cohort.hpp"

#include <algorithm>
#include <cmath>

#include "common/error.hpp"

namespace ttshield::cohorts {

const std::vector<std::string>& FeatureNames() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n{"TMB", "PSTH", "Albumin", "NLR", "Age"};
    for (std::size_t t = 1; t <= kCancerTypes; ++t) {
      n.push_back(std::string("CancerType_") + (t < 10 ? "0" : "") + std::to_string(t));
    }
    return n;
  }();
  return names;
}

bool IsBinaryFeature(std::size_t feature) {
  return feature == kPsth || feature >= kFirstCancerType;
}

std::size_t CancerTypeFeature(int type) {
  Require(type >= 1 && type <= static_cast<int>(kCancerTypes), ErrorCode::kArgument,
          "cancer type must lie in 1..16, got " + std::to_string(type));
  return kFirstCancerType + static_cast<std::size_t>(type - 1);
}

double Cohort::response_rate() const {
  return data.size() == 0 ? 0.0
                          : static_cast<double>(data.positives()) /
                                static_cast<double>(data.size());
}

int Cohort::cancer_type(std::size_t row) const {
  for (std::size_t t = 0; t < kCancerTypes; ++t)
    if (data.features(static_cast<Eigen::Index>(row),
                      static_cast<Eigen::Index>(kFirstCancerType + t)) == 1.0)
      return static_cast<int>(t + 1);
  return 0;
}

void ValidateCohort(const Cohort& c) {
  const auto& names = FeatureNames();
  Require(c.data.feature_count() == kFeatureCount, ErrorCode::kValidation,
          c.name + ": expected 21 feature columns");
  Require(static_cast<std::size_t>(c.data.features.rows()) == c.data.labels.size(),
          ErrorCode::kValidation, c.name + ": row/label count mismatch");
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto row = c.data.row(i);
    auto where = [&](std::size_t col) {
      return c.name + " row " + std::to_string(i + 1) + " column " + names[col];
    };
    for (std::size_t j = 0; j < kFeatureCount; ++j)
      Require(std::isfinite(row[j]), ErrorCode::kValidation, where(j) + ": non-finite");
    Require(row[kTmb] >= 0.0, ErrorCode::kValidation, where(kTmb) + ": must be >= 0");
    Require(row[kAlbumin] > 0.0, ErrorCode::kValidation, where(kAlbumin) + ": must be > 0");
    Require(row[kNlr] > 0.0, ErrorCode::kValidation, where(kNlr) + ": must be > 0");
    Require(row[kAge] > 0.0, ErrorCode::kValidation, where(kAge) + ": must be > 0");
    Require(row[kPsth] == 0.0 || row[kPsth] == 1.0, ErrorCode::kValidation,
            where(kPsth) + ": must be 0 or 1");
    int flags = 0;
    for (std::size_t t = 0; t < kCancerTypes; ++t) {
      const double v = row[kFirstCancerType + t];
      Require(v == 0.0 || v == 1.0, ErrorCode::kValidation,
              where(kFirstCancerType + t) + ": must be 0 or 1");
      flags += (v == 1.0);
    }
    Require(flags == 1, ErrorCode::kValidation,
            c.name + " row " + std::to_string(i + 1) +
                ": exactly one cancer-type flag must be set (found " +
                std::to_string(flags) + ")");
    Require(c.data.labels[i] == 0 || c.data.labels[i] == 1, ErrorCode::kValidation,
            c.name + " row " + std::to_string(i + 1) + " column Response: must be 0 or 1");
  }
}

DatasetUnion Union(std::span<const Cohort> cohorts, std::span<const std::size_t> members) {
  Require(!members.empty(), ErrorCode::kArgument, "union needs at least one member cohort");
  DatasetUnion u;
  u.members.assign(members.begin(), members.end());
  std::sort(u.members.begin(), u.members.end());
  Require(std::adjacent_find(u.members.begin(), u.members.end()) == u.members.end(),
          ErrorCode::kArgument, "duplicate cohort in union");
  Require(u.members.back() < cohorts.size(), ErrorCode::kArgument,
          "union member out of range");
  u.indicator.assign(cohorts.size(), 0);
  Eigen::Index rows = 0;
  for (std::size_t m : u.members) {
    u.indicator[m] = 1;
    rows += cohorts[m].data.features.rows();
  }
  const Eigen::Index cols = cohorts[u.members.front()].data.features.cols();
  u.data.features.resize(rows, cols);
  Eigen::Index at = 0;
  for (std::size_t m : u.members) {
    const Dataset& d = cohorts[m].data;
    Require(d.features.cols() == cols, ErrorCode::kShape, "cohort width mismatch");
    u.data.features.middleRows(at, d.features.rows()) = d.features;
    u.data.labels.insert(u.data.labels.end(), d.labels.begin(), d.labels.end());
    at += d.features.rows();
  }
  return u;
}

std::vector<std::vector<std::size_t>> EnumerateUnions(std::size_t cohort_count,
                                                      std::size_t max_size) {
  Require(cohort_count >= 1 && cohort_count < 31, ErrorCode::kArgument,
          "cohort count must lie in 1..30");
  const std::size_t cap = max_size == 0 ? cohort_count : std::min(max_size, cohort_count);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t size = 1; size <= cap; ++size) {
    for (unsigned long mask = 1; mask < (1ul << cohort_count); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcountl(mask)) != size) continue;
      std::vector<std::size_t> members;
      for (std::size_t m = 0; m < cohort_count; ++m)
        if (mask & (1ul << m)) members.push_back(m);
      out.push_back(std::move(members));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

Dataset Pool(std::span<const Cohort> cohorts) {
  std::vector<std::size_t> all(cohorts.size());
  for (std::size_t m = 0; m < all.size(); ++m) all[m] = m;
  return Union(cohorts, all).data;
}

}  // namespace ttshield::cohorts
