// Copyright 2026 The Semsplit Authors.
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

#include "semsplit/error.h"

namespace semsplit {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedInput: return "MalformedInput";
    case ErrorCode::kDanglingReference: return "DanglingReference";
    case ErrorCode::kMultipleParents: return "MultipleParents";
    case ErrorCode::kCycleDetected: return "CycleDetected";
    case ErrorCode::kUnanchoredToken: return "UnanchoredToken";
    case ErrorCode::kUnknownUnit: return "UnknownUnit";
    case ErrorCode::kNotAScene: return "NotAScene";
    case ErrorCode::kEmptySpan: return "EmptySpan";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kEmptyReferenceSet: return "EmptyReferenceSet";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kBackendUnavailable: return "BackendUnavailable";
    case ErrorCode::kInsufficientHypotheses: return "InsufficientHypotheses";
    case ErrorCode::kTimeout: return "Timeout";
    case ErrorCode::kCacheCorrupt: return "CacheCorrupt";
    case ErrorCode::kOutOfScale: return "OutOfScale";
    case ErrorCode::kDuplicateJudgment: return "DuplicateJudgment";
    case ErrorCode::kIncompleteGrid: return "IncompleteGrid";
    case ErrorCode::kDegenerateMarginals: return "DegenerateMarginals";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code) {}

}  // namespace semsplit
