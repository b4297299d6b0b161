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
#include "tensorize/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "common/error.hpp"
#include "tensorize/discretize.hpp"

namespace ttshield::tensorize {

AccessLevel AccessLevel::Wbb(int bins) {
  Require(bins >= 2, ErrorCode::kArgument, "b-WBB needs b >= 2");
  return {Kind::kWeakBlackBox, bins};
}

std::string AccessLevel::Name() const {
  switch (kind) {
    case Kind::kWeakBlackBox:
      return "wbb" + std::to_string(bins);
    case Kind::kStrongBlackBox:
      return "sbb";
    case Kind::kWhiteBox:
      return "wb";
  }
  return "?";
}

AccessLevel AccessLevel::Parse(const std::string& name) {
  if (name == "sbb") return Sbb();
  if (name == "wb") return Wb();
  if (name.rfind("wbb", 0) == 0 && name.size() > 3) {
    int b = 0;
    try {
      std::size_t used = 0;
      b = std::stoi(name.substr(3), &used);
      Require(used == name.size() - 3, ErrorCode::kArgument, "");
    } catch (const std::exception&) {
      Fail(ErrorCode::kArgument, "malformed access level '" + name + "'");
    }
    return Wbb(b);
  }
  Fail(ErrorCode::kArgument, "unknown access level '" + name + "' (want wbb<b>, sbb, wb)");
}

Oracle::Oracle(ScoreFunction score, std::size_t feature_count, AccessLevel level)
    : score_(std::move(score)),
      feature_count_(feature_count),
      level_(level),
      queries_(std::make_shared<std::atomic<std::size_t>>(0)) {
  Require(level_.is_black_box(), ErrorCode::kAccess,
          "an oracle only offers black-box access");
  Require(static_cast<bool>(score_), ErrorCode::kArgument, "oracle needs a score function");
}

Oracle::Oracle(std::shared_ptr<const predictors::Scorer> scorer, AccessLevel level)
    : Oracle(
          [scorer](std::span<const double> x) { return scorer->Score(x); },
          scorer->feature_count(), level) {}

double Oracle::Query(std::span<const double> x) const {
  Require(x.size() == feature_count_, ErrorCode::kShape,
          "oracle query has " + std::to_string(x.size()) + " features, expected " +
              std::to_string(feature_count_));
  queries_->fetch_add(1, std::memory_order_relaxed);
  const double s = score_(x);
  return level_.kind == AccessLevel::Kind::kWeakBlackBox ? Discretize(s, level_.bins) : s;
}

AmplitudeFunction BornAmplitudes(const Oracle& oracle) {
  return [&oracle](std::span<const double> x) -> std::array<double, 2> {
    const double s = std::clamp(oracle.Query(x), 0.0, 1.0);
    return {std::sqrt(1.0 - s), std::sqrt(s)};
  };
}

}  // namespace ttshield::tensorize
