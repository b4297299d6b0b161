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
#ifndef TTSHIELD_PRIVACY_ACCESS_HPP_
#define TTSHIELD_PRIVACY_ACCESS_HPP_

#include <memory>
#include <optional>
#include <vector>

#include "common/dataset.hpp"
#include "predictors/model.hpp"
#include "tensorize/oracle.hpp"
#include "tt/tensor_train.hpp"

namespace ttshield::privacy {

using tensorize::AccessLevel;

// What an adversary may touch: a score function and, for local artifacts,
// the flattened raw-scale parameter vector.
struct Target {
  std::shared_ptr<const predictors::Scorer> scorer;
  std::optional<std::vector<double>> parameters;
};

Target TargetFromModel(predictors::Model model);
Target TargetFromTt(tt::TensorTrain tt);
// Remote or opaque scorers: black-box access only.
Target TargetFromScorer(std::shared_ptr<const predictors::Scorer> scorer);

// b-WBB: discretized scores on the probes; SBB: raw scores; WB: parameters.
// WB on a target without parameters throws kAccess.
std::vector<double> Access(const Target& target, const AccessLevel& level,
                           const Matrix& probes);

}  // namespace ttshield::privacy

#endif  // TTSHIELD_PRIVACY_ACCESS_HPP_
