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
#ifndef TTSHIELD_COMMON_ERROR_HPP_
#define TTSHIELD_COMMON_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace ttshield {

// Numeric values are part of the C ABI (see include/ttshield/ttshield.h).
enum class ErrorCode : int {
  kOk = 0,
  kShape = 1,
  kDomain = 2,
  kArgument = 3,
  kDegenerate = 4,
  kTraining = 5,
  kParse = 6,
  kValidation = 7,
  kAccess = 8,
  kUnsupported = 9,
  kIo = 10,
  kRecovery = 11,
  kMetric = 12,
  kInternal = 13,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& message);

inline void Require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) Fail(code, message);
}

}  // namespace ttshield

#endif  // TTSHIELD_COMMON_ERROR_HPP_
