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
#include "harness/report.hpp"

#include <algorithm>
#include <cstdio>

#include "cohorts/csv.hpp"
#include "common/error.hpp"

namespace ttshield::harness {
namespace {

std::string Cell3(const ScoreCell& c) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f \xC2\xB1 %.3f", c.mean, c.std);
  return buf;
}

// Display width of UTF-8 text.
std::size_t Width(const std::string& s) {
  std::size_t w = 0;
  for (unsigned char ch : s)
    if ((ch & 0xC0) != 0x80) ++w;
  return w;
}

std::string Pad(const std::string& s, std::size_t width, bool left) {
  const std::string fill(width > Width(s) ? width - Width(s) : 0, ' ');
  return left ? s + fill : fill + s;
}

}  // namespace

const ScoreRow* ScoreTable::Find(const std::string& row) const {
  for (const auto& r : rows)
    if (r.name == row) return &r;
  return nullptr;
}

std::optional<ScoreCell> ScoreTable::Cell(const std::string& row, const std::string& column) const {
  const ScoreRow* r = Find(row);
  const auto it = std::find(columns.begin(), columns.end(), column);
  if (!r || it == columns.end()) return std::nullopt;
  return r->cells[static_cast<std::size_t>(it - columns.begin())];
}

std::string ColumnTitle(const std::string& access) {
  if (access.rfind("wbb", 0) == 0) return access.substr(3) + "-WBB";
  if (access == "sbb") return "SBB";
  if (access == "wb") return "WB";
  return access;
}

std::string FormatTable(const ScoreTable& table) {
  std::vector<std::vector<std::string>> grid;
  std::vector<std::string> header{"model / defense"};
  for (const auto& c : table.columns) header.push_back(ColumnTitle(c));
  grid.push_back(header);
  for (const auto& r : table.rows) {
    std::vector<std::string> line{r.name};
    for (const auto& c : r.cells) line.push_back(c ? Cell3(*c) : "-");
    grid.push_back(line);
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : grid)
    for (std::size_t k = 0; k < line.size(); ++k) width[k] = std::max(width[k], Width(line[k]));
  std::string out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t k = 0; k < grid[i].size(); ++k) {
      if (k) out += "  ";
      out += Pad(grid[i][k], width[k], k == 0);
    }
    out += '\n';
    if (i == 0) {
      std::size_t total = 0;
      for (std::size_t w : width) total += w;
      out += std::string(total + 2 * (width.size() - 1), '-') + '\n';
    }
  }
  return out;
}

std::string TableToCsv(const ScoreTable& table) {
  std::string out = "row,access,mean,std,records\n";
  for (const auto& r : table.rows)
    for (std::size_t k = 0; k < table.columns.size(); ++k) {
      if (!r.cells[k]) continue;
      out += r.name + ',' + table.columns[k] + ',' + cohorts::FormatDouble(r.cells[k]->mean) +
             ',' + cohorts::FormatDouble(r.cells[k]->std) + ',' +
             std::to_string(r.cells[k]->records) + '\n';
    }
  return out;
}

nlohmann::json TableToJson(const ScoreTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : table.rows) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : r.cells)
      cells.push_back(c ? nlohmann::json{{"mean", c->mean}, {"std", c->std}, {"records", c->records}}
                        : nlohmann::json());
    rows.push_back({{"name", r.name}, {"cells", cells}, {"failures", r.failures}});
  }
  return {{"columns", table.columns}, {"rows", rows}};
}

ScoreTable TableFromJson(const nlohmann::json& doc) {
  try {
    ScoreTable t;
    t.columns = doc.at("columns").get<std::vector<std::string>>();
    for (const auto& r : doc.at("rows")) {
      ScoreRow row;
      row.name = r.at("name").get<std::string>();
      row.failures = r.value("failures", std::size_t{0});
      for (const auto& c : r.at("cells")) {
        if (c.is_null()) {
          row.cells.emplace_back();
        } else {
          row.cells.push_back(ScoreCell{c.at("mean").get<double>(), c.at("std").get<double>(),
                                        c.value("records", std::size_t{0})});
        }
      }
      Require(row.cells.size() == t.columns.size(), ErrorCode::kParse,
              "score table row '" + row.name + "' has the wrong number of cells");
      t.rows.push_back(std::move(row));
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, std::string("score table json: ") + e.what());
  }
}

ScoreTable MergeTables(const std::vector<ScoreTable>& tables) {
  ScoreTable out;
  for (const auto& t : tables)
    for (const auto& c : t.columns)
      if (std::find(out.columns.begin(), out.columns.end(), c) == out.columns.end())
        out.columns.push_back(c);
  for (const auto& t : tables)
    for (const auto& r : t.rows) {
      ScoreRow row{r.name, std::vector<std::optional<ScoreCell>>(out.columns.size()), r.failures};
      for (std::size_t k = 0; k < t.columns.size(); ++k) {
        const auto it = std::find(out.columns.begin(), out.columns.end(), t.columns[k]);
        row.cells[static_cast<std::size_t>(it - out.columns.begin())] = r.cells[k];
      }
      out.rows.push_back(std::move(row));
    }
  return out;
}

}  // namespace ttshield::harness
