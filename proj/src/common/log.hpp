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
#ifndef TTSHIELD_COMMON_LOG_HPP_
#define TTSHIELD_COMMON_LOG_HPP_

#include <string>

namespace ttshield {

enum class LogLevel { kDebug = 0, kInfo = 1, kWarning = 2, kError = 3, kSilent = 4 };

void SetLogLevel(LogLevel level);
LogLevel GetLogLevel();

void Log(LogLevel level, const std::string& message);

inline void LogWarning(const std::string& message) {
  Log(LogLevel::kWarning, message);
}
inline void LogInfo(const std::string& message) { Log(LogLevel::kInfo, message); }

}  // namespace ttshield

#endif  // TTSHIELD_COMMON_LOG_HPP_
