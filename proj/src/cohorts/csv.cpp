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
#include "cohorts/csv.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "common/error.hpp"

namespace ttshield::cohorts {
namespace {

std::vector<std::string> SplitLine(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string Header() {
  std::string h;
  for (const std::string& n : FeatureNames()) h += n + ",";
  return h + "Response";
}

}  // namespace

std::string FormatDouble(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string CohortToCsv(const Cohort& cohort) {
  std::string out = Header() + "\n";
  for (std::size_t i = 0; i < cohort.size(); ++i) {
    const auto row = cohort.data.row(i);
    for (std::size_t j = 0; j < kFeatureCount; ++j) {
      out += IsBinaryFeature(j) ? (row[j] == 1.0 ? "1" : "0") : FormatDouble(row[j]);
      out += ',';
    }
    out += cohort.data.labels[i] == 1 ? "1\n" : "0\n";
  }
  return out;
}

void WriteCohortCsv(const Cohort& cohort, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  Require(static_cast<bool>(out), ErrorCode::kIo, "cannot open " + path + " for writing");
  out << CohortToCsv(cohort);
  Require(static_cast<bool>(out), ErrorCode::kIo, "write failed: " + path);
}

Cohort CohortFromCsv(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  std::string line;
  Require(static_cast<bool>(std::getline(in, line)), ErrorCode::kParse, name + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  const auto header = SplitLine(line);
  const auto& names = FeatureNames();
  Require(header.size() == kFeatureCount + 1, ErrorCode::kParse,
          name + " row 1: expected " + std::to_string(kFeatureCount + 1) + " columns, got " +
              std::to_string(header.size()));
  for (std::size_t j = 0; j <= kFeatureCount; ++j) {
    const std::string& want = j < kFeatureCount ? names[j] : std::string("Response");
    Require(header[j] == want, ErrorCode::kParse,
            name + " row 1 column " + std::to_string(j + 1) + ": expected header '" + want +
                "', got '" + header[j] + "'");
  }

  std::vector<double> values;
  std::vector<int> labels;
  std::size_t row_number = 1;
  while (std::getline(in, line)) {
    ++row_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = SplitLine(line);
    Require(fields.size() == kFeatureCount + 1, ErrorCode::kParse,
            name + " row " + std::to_string(row_number) + ": expected " +
                std::to_string(kFeatureCount + 1) + " columns, got " +
                std::to_string(fields.size()));
    for (std::size_t j = 0; j <= kFeatureCount; ++j) {
      const std::string& s = fields[j];
      double v = 0.0;
      const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
      const std::string col = j < kFeatureCount ? names[j] : std::string("Response");
      Require(!s.empty() && res.ec == std::errc() && res.ptr == s.data() + s.size(),
              ErrorCode::kParse,
              name + " row " + std::to_string(row_number) + " column " + col +
                  ": cannot parse '" + s + "'");
      if (j < kFeatureCount) {
        values.push_back(v);
      } else {
        Require(v == 0.0 || v == 1.0, ErrorCode::kParse,
                name + " row " + std::to_string(row_number) +
                    " column Response: must be 0 or 1");
        labels.push_back(static_cast<int>(v));
      }
    }
  }
  Cohort cohort;
  cohort.name = name;
  cohort.data.features = Eigen::Map<const Matrix>(
      values.data(), static_cast<Eigen::Index>(labels.size()),
      static_cast<Eigen::Index>(kFeatureCount));
  cohort.data.labels = std::move(labels);
  ValidateCohort(cohort);
  return cohort;
}

Cohort LoadCohortCsv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  Require(static_cast<bool>(in), ErrorCode::kIo, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return CohortFromCsv(buf.str(), std::filesystem::path(path).stem().string());
}

}  // namespace ttshield::cohorts
