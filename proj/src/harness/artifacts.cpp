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
#include "harness/artifacts.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "common/error.hpp"
#include "harness/config.hpp"

namespace ttshield::harness {

namespace fs = std::filesystem;

ArtifactStore::ArtifactStore(std::string directory) : directory_(std::move(directory)) {
  std::error_code ec;
  fs::create_directories(directory_, ec);
  Require(!ec && fs::is_directory(directory_), ErrorCode::kIo,
          "cannot create output directory '" + directory_ + "'");
}

std::string ArtifactStore::Path(const std::string& name) const {
  return (fs::path(directory_) / name).string();
}

std::string ArtifactStore::Put(const std::string& stem, const std::string& extension,
                               const std::string& content) {
  const std::string name = stem + "-" + ContentHash(content).substr(0, 12) + "." + extension;
  const std::string path = Path(name);
  if (fs::exists(path)) {
    Require(ReadTextFile(path) == content, ErrorCode::kIo,
            "artifact '" + name + "' exists with different content");
    return name;
  }
  const std::string tmp = path + ".partial";
  {
    std::ofstream out(tmp, std::ios::binary);
    out << content;
    Require(out.good(), ErrorCode::kIo, "cannot write '" + tmp + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  Require(!ec, ErrorCode::kIo, "cannot move artifact into place: " + path);
  return name;
}

Manifest::Manifest(std::string command, std::string config_hash)
    : command_(std::move(command)), config_hash_(std::move(config_hash)) {}

void Manifest::AddSeed(const std::string& purpose, std::uint64_t seed) { seeds_[purpose] = seed; }

void Manifest::AddArtifact(const std::string& role, const std::string& name) {
  artifacts_.push_back({{"role", role}, {"file", name}});
}

void Manifest::Set(const std::string& key, nlohmann::json value) { extra_[key] = std::move(value); }

nlohmann::json Manifest::ToJson() const {
  nlohmann::json doc = {{"command", command_},
                        {"config_hash", config_hash_},
                        {"seeds", seeds_},
                        {"artifacts", artifacts_}};
  for (const auto& [k, v] : extra_.items()) doc[k] = v;
  return doc;
}

std::string Manifest::Write(ArtifactStore& store) const {
  return store.Put("manifest-" + command_, "json", ToJson().dump(2) + "\n");
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  Require(in.good(), ErrorCode::kIo, "cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace ttshield::harness
