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
#ifndef TTSHIELD_HARNESS_ARTIFACTS_HPP_
#define TTSHIELD_HARNESS_ARTIFACTS_HPP_

#include <string>
#include <vector>

#include "json.hpp"

namespace ttshield::harness {

// Append-only directory of content-addressed files. A file is named
// <stem>-<hash>.<ext>; writing the same bytes again reuses it, and a name
// collision with different bytes is an error rather than an overwrite.
class ArtifactStore {
 public:
  explicit ArtifactStore(std::string directory);

  // Returns the file name (relative to the directory).
  std::string Put(const std::string& stem, const std::string& extension,
                  const std::string& content);
  std::string Path(const std::string& name) const;
  const std::string& directory() const { return directory_; }

 private:
  std::string directory_;
};

// Record of one command run: config hash, seeds and the artifacts written.
class Manifest {
 public:
  Manifest(std::string command, std::string config_hash);
  void AddSeed(const std::string& purpose, std::uint64_t seed);
  void AddArtifact(const std::string& role, const std::string& name);
  void Set(const std::string& key, nlohmann::json value);
  nlohmann::json ToJson() const;
  // Stored as manifest-<command>-<hash>.json.
  std::string Write(ArtifactStore& store) const;

 private:
  std::string command_;
  std::string config_hash_;
  nlohmann::json seeds_ = nlohmann::json::object();
  nlohmann::json artifacts_ = nlohmann::json::array();
  nlohmann::json extra_ = nlohmann::json::object();
};

std::string ReadTextFile(const std::string& path);

}  // namespace ttshield::harness

#endif  // TTSHIELD_HARNESS_ARTIFACTS_HPP_
