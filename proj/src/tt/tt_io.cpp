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
#include "tt/tt_io.hpp"

#include "common/error.hpp"

namespace ttshield::tt {

nlohmann::json ToJson(const TensorTrain& tt) {
  nlohmann::json doc;
  doc["ranks"] = tt.ranks();
  doc["dims"] = tt.dims();
  doc["output_site"] = tt.output_site() ? nlohmann::json(*tt.output_site())
                                        : nlohmann::json(nullptr);
  nlohmann::json cores = nlohmann::json::array();
  for (const Core& c : tt.cores()) cores.push_back(c.data);
  doc["cores"] = std::move(cores);
  doc["input_scale"] = tt.input_scale() == InputScale::kRaw ? "raw" : "standardized";
  doc["embedding"] = "poly1";
  return doc;
}

TensorTrain FromJson(const nlohmann::json& doc) {
  try {
    const auto ranks = doc.at("ranks").get<std::vector<std::size_t>>();
    const auto dims = doc.at("dims").get<std::vector<std::size_t>>();
    const auto& cores_doc = doc.at("cores");
    Require(ranks.size() == dims.size() + 1, ErrorCode::kParse,
            "ranks must have one more entry than dims");
    Require(cores_doc.is_array() && cores_doc.size() == dims.size(), ErrorCode::kParse,
            "cores must have one entry per site");
    std::vector<Core> cores;
    for (std::size_t n = 0; n < dims.size(); ++n) {
      Core c(ranks[n], dims[n], ranks[n + 1]);
      auto data = cores_doc[n].get<std::vector<double>>();
      Require(data.size() == c.data.size(), ErrorCode::kParse,
              "core " + std::to_string(n) + " has wrong element count");
      c.data = std::move(data);
      cores.push_back(std::move(c));
    }
    std::optional<std::size_t> out;
    if (doc.contains("output_site") && !doc.at("output_site").is_null())
      out = doc.at("output_site").get<std::size_t>();
    const std::string scale = doc.value("input_scale", "standardized");
    Require(scale == "raw" || scale == "standardized", ErrorCode::kParse,
            "input_scale must be raw or standardized");
    const std::string embedding = doc.value("embedding", "poly1");
    Require(embedding == "poly1", ErrorCode::kUnsupported,
            "unsupported embedding '" + embedding + "'");
    return TensorTrain(std::move(cores), out,
                       scale == "raw" ? InputScale::kRaw : InputScale::kStandardized,
                       EmbeddingKind::kPoly1);
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, std::string("tensor train json: ") + e.what());
  }
}

std::string ToJsonString(const TensorTrain& tt) { return ToJson(tt).dump(); }

TensorTrain FromJsonString(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, std::string("tensor train json: ") + e.what());
  }
  return FromJson(doc);
}

}  // namespace ttshield::tt
