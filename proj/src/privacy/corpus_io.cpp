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
#include "privacy/corpus_io.hpp"

#include <charconv>
#include <sstream>

#include "cohorts/csv.hpp"
#include "common/error.hpp"

namespace ttshield::privacy {
namespace {

constexpr int kProvenanceColumns = 6;

std::vector<std::string> Split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double ParseDouble(const std::string& s, std::size_t row, std::size_t col) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  Require(!s.empty() && res.ec == std::errc() && res.ptr == s.data() + s.size(),
          ErrorCode::kParse,
          "corpus row " + std::to_string(row) + " column " + std::to_string(col + 1) +
              ": cannot parse '" + s + "'");
  return v;
}

// Provenance strings must not contain the separator.
std::string Clean(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n') c = ';';
  return s;
}

}  // namespace

std::string CorpusToCsv(const AttackCorpus& corpus) {
  std::string out = "model_kind,mechanism,access,hyper,seed,replicate";
  for (std::size_t k = 0; k < corpus.feature_count(); ++k) out += ",f" + std::to_string(k);
  for (std::size_t m = 0; m < corpus.cohort_count; ++m) out += ",l" + std::to_string(m);
  out += '\n';
  for (const AttackRecord& r : corpus.records) {
    const Provenance& p = r.provenance;
    out += Clean(p.model_kind) + ',' + Clean(p.mechanism) + ',' + Clean(p.access) + ',' +
           Clean(p.hyper) + ',' + std::to_string(p.seed) + ',' + std::to_string(p.replicate);
    for (double f : r.features) out += ',' + cohorts::FormatDouble(f);
    for (int l : r.label) out += l ? ",1" : ",0";
    out += '\n';
  }
  return out;
}

nlohmann::json CorpusManifest(const AttackCorpus& corpus) {
  return {{"access", corpus.access},
          {"seed", corpus.seed},
          {"cohort_count", corpus.cohort_count},
          {"feature_count", corpus.feature_count()},
          {"record_count", corpus.records.size()},
          {"probe_ids", corpus.probe_ids},
          {"failures", corpus.failures}};
}

AttackCorpus CorpusFromCsv(const std::string& csv, const nlohmann::json& manifest) {
  AttackCorpus c;
  try {
    c.access = manifest.at("access").get<std::string>();
    c.seed = manifest.at("seed").get<std::uint64_t>();
    c.cohort_count = manifest.at("cohort_count").get<std::size_t>();
    c.probe_ids = manifest.at("probe_ids").get<std::vector<std::size_t>>();
    c.failures = manifest.value("failures", std::vector<std::string>{});
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, std::string("corpus manifest: ") + e.what());
  }
  std::istringstream in(csv);
  std::string line;
  Require(static_cast<bool>(std::getline(in, line)), ErrorCode::kParse, "empty corpus CSV");
  const auto header = Split(line);
  Require(header.size() >= kProvenanceColumns + c.cohort_count, ErrorCode::kParse,
          "corpus header too short");
  const std::size_t features = header.size() - kProvenanceColumns - c.cohort_count;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto f = Split(line);
    Require(f.size() == header.size(), ErrorCode::kParse,
            "corpus row " + std::to_string(row) + ": wrong column count");
    AttackRecord r;
    r.provenance.model_kind = f[0];
    r.provenance.mechanism = f[1];
    r.provenance.access = f[2];
    r.provenance.hyper = f[3];
    r.provenance.seed = static_cast<std::uint64_t>(std::stoull(f[4]));
    r.provenance.replicate = static_cast<std::size_t>(std::stoull(f[5]));
    for (std::size_t k = 0; k < features; ++k)
      r.features.push_back(ParseDouble(f[kProvenanceColumns + k], row, kProvenanceColumns + k));
    for (std::size_t m = 0; m < c.cohort_count; ++m) {
      const std::size_t col = kProvenanceColumns + features + m;
      const double v = ParseDouble(f[col], row, col);
      Require(v == 0.0 || v == 1.0, ErrorCode::kParse,
              "corpus row " + std::to_string(row) + ": label must be 0 or 1");
      r.label.push_back(static_cast<int>(v));
    }
    c.records.push_back(std::move(r));
  }
  return c;
}

}  // namespace ttshield::privacy
