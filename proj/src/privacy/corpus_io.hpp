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
#ifndef TTSHIELD_PRIVACY_CORPUS_IO_HPP_
#define TTSHIELD_PRIVACY_CORPUS_IO_HPP_

#include <string>

#include "json.hpp"

#include "privacy/corpus.hpp"

namespace ttshield::privacy {

// One row per record: model_kind, mechanism, access, hyper, seed, replicate,
// f0..fK, l0..lM.
std::string CorpusToCsv(const AttackCorpus& corpus);
// Probe ids, access level, seed, cohort count and skipped jobs.
nlohmann::json CorpusManifest(const AttackCorpus& corpus);
AttackCorpus CorpusFromCsv(const std::string& csv, const nlohmann::json& manifest);

}  // namespace ttshield::privacy

#endif  // TTSHIELD_PRIVACY_CORPUS_IO_HPP_
