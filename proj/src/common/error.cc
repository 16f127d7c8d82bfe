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

#include "eqq/common/error.h"

namespace eqq {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimension: return "dimension";
    case ErrorCode::kType: return "type";
    case ErrorCode::kValidation: return "validation";
    case ErrorCode::kPlanning: return "planning";
    case ErrorCode::kMagicMismatch: return "magic-mismatch";
    case ErrorCode::kVersionMismatch: return "version-mismatch";
    case ErrorCode::kTruncated: return "truncated";
    case ErrorCode::kIntegrity: return "integrity";
    case ErrorCode::kDimMismatch: return "dim-mismatch";
    case ErrorCode::kMissingTensor: return "missing-tensor";
    case ErrorCode::kUnknownTensor: return "unknown-tensor";
    case ErrorCode::kIngestion: return "ingestion";
    case ErrorCode::kDegenerateRange: return "degenerate-range";
    case ErrorCode::kCalibrationRequired: return "calibration-required";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace eqq
