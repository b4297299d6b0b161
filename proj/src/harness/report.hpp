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
#ifndef TTSHIELD_HARNESS_REPORT_HPP_
#define TTSHIELD_HARNESS_REPORT_HPP_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace ttshield::harness {

struct ScoreCell {
  double mean = 0.0;
  double std = 0.0;
  std::size_t records = 0;
};

struct ScoreRow {
  std::string name;  // RowSpec::Name()
  std::vector<std::optional<ScoreCell>> cells;  // one per column; empty = not run
  std::size_t failures = 0;                      // skipped shadow jobs
};

// Hamming scores of the membership attack, rows = released artifact,
// columns = access level names.
struct ScoreTable {
  std::vector<std::string> columns;
  std::vector<ScoreRow> rows;

  const ScoreRow* Find(const std::string& row) const;
  std::optional<ScoreCell> Cell(const std::string& row, const std::string& column) const;
};

// Column headers in the report: wbb<b> -> "<b>-WBB", sbb -> "SBB", wb -> "WB".
std::string ColumnTitle(const std::string& access);

// Plain-text table, cells "mean ± std" at three decimals; "-" for cells not run.
std::string FormatTable(const ScoreTable& table);
// row,access,mean,std,records
std::string TableToCsv(const ScoreTable& table);
nlohmann::json TableToJson(const ScoreTable& table);
ScoreTable TableFromJson(const nlohmann::json& doc);
// Rows of several tables concatenated; columns are the union in first-seen order.
ScoreTable MergeTables(const std::vector<ScoreTable>& tables);

}  // namespace ttshield::harness

#endif  // TTSHIELD_HARNESS_REPORT_HPP_
