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
#ifndef TTSHIELD_PREDICTORS_MODEL_IO_HPP_
#define TTSHIELD_PREDICTORS_MODEL_IO_HPP_

#include <string>

#include "json.hpp"
#include "predictors/model.hpp"

namespace ttshield::predictors {

// {"type": "lr"|"mlp", "params": [...], "standardizer": {"mu", "sigma"},
//  "hyper": {...}} with an optional "dp" block carried through untouched.
nlohmann::json ModelToJson(const Model& model);
Model ModelFromJson(const nlohmann::json& doc);

nlohmann::json HyperToJson(const ModelHyper& hyper);
ModelHyper HyperFromJson(const nlohmann::json& doc);

nlohmann::json StandardizerToJson(const Standardizer& s);
Standardizer StandardizerFromJson(const nlohmann::json& doc);

}  // namespace ttshield::predictors

#endif  // TTSHIELD_PREDICTORS_MODEL_IO_HPP_
