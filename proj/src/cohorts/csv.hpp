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
#ifndef TTSHIELD_COHORTS_CSV_HPP_
#define TTSHIELD_COHORTS_CSV_HPP_

#include <string>

#include "cohorts/cohort.hpp"

namespace ttshield::cohorts {

// Header: TMB,PSTH,Albumin,NLR,Age,CancerType_01..CancerType_16,Response.
// Continuous values use the shortest round-trip decimal form; flags and the
// response are written as 0/1.
std::string CohortToCsv(const Cohort& cohort);
void WriteCohortCsv(const Cohort& cohort, const std::string& path);

// Parses and validates. Schema problems throw kParse naming the row and
// column; invariant violations (e.g. two type flags) throw kValidation.
Cohort CohortFromCsv(const std::string& text, const std::string& name);
// The cohort name is the file stem.
Cohort LoadCohortCsv(const std::string& path);

// Shortest decimal text that parses back to exactly `value`.
std::string FormatDouble(double value);

}  // namespace ttshield::cohorts

#endif  // TTSHIELD_COHORTS_CSV_HPP_
