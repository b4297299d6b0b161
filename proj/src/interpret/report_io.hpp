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
#ifndef TTSHIELD_INTERPRET_REPORT_IO_HPP_
#define TTSHIELD_INTERPRET_REPORT_IO_HPP_

#include <string>

#include "json.hpp"

#include "interpret/monotonicity.hpp"
#include "interpret/sensitivity.hpp"

namespace ttshield::interpret {

// feature,raw_score,normalized_score,context
std::string SensitivityToCsv(const SensitivityReport& report);
// bin_low,bin_high,mean,ci_low,ci_high
std::string CurveToCsv(const MonotonicityCurve& curve);
// Self-contained SVG: bin means with interval whiskers, the diagonal and the
// 10% / 50% response levels.
std::string CurveToSvg(const MonotonicityCurve& curve, const std::string& title);

nlohmann::json SensitivityToJson(const SensitivityReport& report);
nlohmann::json CurveToJson(const MonotonicityCurve& curve);

}  // namespace ttshield::interpret

#endif  // TTSHIELD_INTERPRET_REPORT_IO_HPP_
