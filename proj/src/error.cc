// Copyright 2026 The blockprune Authors
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

#include "blockprune/error.h"

namespace blockprune {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kEmptyImage: return "EmptyImage";
    case ErrorCode::kDimensionNotDivisible: return "DimensionNotDivisible";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kNoNeighborAvailable: return "NoNeighborAvailable";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kUnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::kTruncated: return "Truncated";
    case ErrorCode::kMalformedStream: return "MalformedStream";
    case ErrorCode::kConfigMismatch: return "ConfigMismatch";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kAllImagesFailed: return "AllImagesFailed";
    case ErrorCode::kNotMergeDivisible: return "NotMergeDivisible";
    case ErrorCode::kOverflow: return "Overflow";
    case ErrorCode::kBudgetOutOfRange: return "BudgetOutOfRange";
    case ErrorCode::kBudgetTooSmall: return "BudgetTooSmall";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kDecode: return "DecodeError";
  }
  return "Unknown";
}

}  // namespace blockprune
