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
#ifndef TTSHIELD_TT_TT_IO_HPP_
#define TTSHIELD_TT_TT_IO_HPP_

#include <string>

#include "json.hpp"
#include "tt/tensor_train.hpp"

namespace ttshield::tt {

// {"ranks", "dims", "output_site", "cores", "input_scale", "embedding"}.
// Doubles are written in shortest round-trip form, so finite cores reload
// bit-exactly.
nlohmann::json ToJson(const TensorTrain& tt);
TensorTrain FromJson(const nlohmann::json& doc);

std::string ToJsonString(const TensorTrain& tt);
TensorTrain FromJsonString(const std::string& text);

}  // namespace ttshield::tt

#endif  // TTSHIELD_TT_TT_IO_HPP_
