// Copyright 2026 The eqquant Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EQQ_COMMON_ERROR_H_
#define EQQ_COMMON_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace eqq {

// Every failure raised by the library carries one of these codes so callers
// (and the CLI exit-status mapping) can tell error classes apart.
enum class ErrorCode {
  kDimension,
  kType,
  kValidation,
  kPlanning,
  kMagicMismatch,
  kVersionMismatch,
  kTruncated,
  kIntegrity,
  kDimMismatch,
  kMissingTensor,
  kUnknownTensor,
  kIngestion,
  kDegenerateRange,
  kCalibrationRequired,
  kIo,
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

inline void Check(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) Fail(code, message);
}

}  // namespace eqq

#endif  // EQQ_COMMON_ERROR_H_
