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

#ifndef BLOCKPRUNE_ERROR_H_
#define BLOCKPRUNE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace blockprune {

enum class ErrorCode {
  kInvalidArgument,
  kEmptyImage,
  kDimensionNotDivisible,
  kShapeMismatch,
  kNoNeighborAvailable,
  // Container / compressed-stream errors.
  kBadMagic,
  kUnsupportedVersion,
  kTruncated,
  kMalformedStream,
  kConfigMismatch,
  // Analysis.
  kEmptyCorpus,
  kAllImagesFailed,
  // Cost model.
  kNotMergeDivisible,
  kOverflow,
  // Baselines.
  kBudgetOutOfRange,
  kBudgetTooSmall,
  // I/O.
  kIo,
  kDecode,
};

std::string_view error_code_name(ErrorCode code);

// Every failure in the library is reported as an Error carrying a code, so
// callers (CLI, C API) can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code), message_(message) {}

  ErrorCode code() const noexcept { return code_; }
  // The message without the code-name prefix that what() carries.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace blockprune

#endif  // BLOCKPRUNE_ERROR_H_
