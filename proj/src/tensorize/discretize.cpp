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
#include "tensorize/discretize.hpp"

#include <cmath>
#include <string>

#include "common/error.hpp"
#include "common/log.hpp"

namespace ttshield::tensorize {

double Discretize(double score, int bins) {
  Require(bins >= 2, ErrorCode::kArgument, "bin count must be >= 2");
  Require(!std::isnan(score), ErrorCode::kDomain, "cannot discretize NaN");
  if (score < 0.0 || score > 1.0) {
    LogWarning("score " + std::to_string(score) + " outside [0, 1], clamped");
    score = score < 0.0 ? 0.0 : 1.0;
  }
  const double steps = bins - 1;
  const double k = std::ceil(score * steps - 0.5);
  return k / steps;
}

}  // namespace ttshield::tensorize
