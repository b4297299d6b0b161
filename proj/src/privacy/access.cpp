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
#include "privacy/access.hpp"

#include "common/error.hpp"
#include "tensorize/discretize.hpp"
#include "tensorize/tensorize.hpp"

namespace ttshield::privacy {

Target TargetFromModel(predictors::Model model) {
  Target t;
  t.parameters = predictors::Parameters(model);
  t.scorer = std::make_shared<predictors::ModelScorer>(std::move(model));
  return t;
}

Target TargetFromTt(tt::TensorTrain tt) {
  Target t;
  t.parameters = tt.Flatten();
  t.scorer = std::make_shared<tensorize::TtScorer>(std::move(tt));
  return t;
}

Target TargetFromScorer(std::shared_ptr<const predictors::Scorer> scorer) {
  return Target{std::move(scorer), std::nullopt};
}

std::vector<double> Access(const Target& target, const AccessLevel& level,
                           const Matrix& probes) {
  if (level.kind == AccessLevel::Kind::kWhiteBox) {
    Require(target.parameters.has_value(), ErrorCode::kAccess,
            "white-box access needs model parameters; this target is black-box only");
    return *target.parameters;
  }
  Require(target.scorer != nullptr, ErrorCode::kArgument, "target has no scorer");
  std::vector<double> out = target.scorer->ScoreAll(probes);
  if (level.kind == AccessLevel::Kind::kWeakBlackBox)
    for (double& s : out) s = tensorize::Discretize(s, level.bins);
  return out;
}

}  // namespace ttshield::privacy
