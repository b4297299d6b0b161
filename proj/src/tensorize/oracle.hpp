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
#ifndef TTSHIELD_TENSORIZE_ORACLE_HPP_
#define TTSHIELD_TENSORIZE_ORACLE_HPP_

#include <array>
#include <atomic>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>

#include "predictors/scorer.hpp"

namespace ttshield::tensorize {

// Adversary access: b-bin weak black box, strong black box, or white box.
struct AccessLevel {
  enum class Kind { kWeakBlackBox, kStrongBlackBox, kWhiteBox };
  Kind kind = Kind::kStrongBlackBox;
  int bins = 0;  // b, for kWeakBlackBox only

  static AccessLevel Wbb(int bins);
  static AccessLevel Sbb() { return {Kind::kStrongBlackBox, 0}; }
  static AccessLevel Wb() { return {Kind::kWhiteBox, 0}; }
  bool is_black_box() const { return kind != Kind::kWhiteBox; }
  // "wbb<b>", "sbb" or "wb".
  std::string Name() const;
  static AccessLevel Parse(const std::string& name);
  bool operator==(const AccessLevel&) const = default;
};

// Raw score function p(y = 1 | x); must be safe to call concurrently.
using ScoreFunction = std::function<double(std::span<const double>)>;

// Black-box view of a scorer. Query() applies the access level's output map
// and counts every call.
class Oracle {
 public:
  Oracle(ScoreFunction score, std::size_t feature_count, AccessLevel level);
  Oracle(std::shared_ptr<const predictors::Scorer> scorer, AccessLevel level);

  double Query(std::span<const double> x) const;
  std::size_t feature_count() const { return feature_count_; }
  const AccessLevel& level() const { return level_; }
  std::size_t query_count() const { return queries_->load(); }
  void ResetCount() const { queries_->store(0); }

 private:
  ScoreFunction score_;
  std::size_t feature_count_;
  AccessLevel level_;
  std::shared_ptr<std::atomic<std::size_t>> queries_;
};

// Per-query output amplitudes (f(x, 0), f(x, 1)) that a sketch fits.
using AmplitudeFunction = std::function<std::array<double, 2>(std::span<const double>)>;

// Born-compatible amplitudes (sqrt(1 - s), sqrt(s)) of the oracle's answer.
AmplitudeFunction BornAmplitudes(const Oracle& oracle);

}  // namespace ttshield::tensorize

#endif  // TTSHIELD_TENSORIZE_ORACLE_HPP_
