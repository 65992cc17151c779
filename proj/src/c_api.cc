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

#include "blockprune/c_api.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>

#include "blockprune/codec.h"
#include "blockprune/error.h"
#include "blockprune/version.h"

namespace {

using blockprune::ErrorCode;

void set_error(char* buf, std::size_t size, const std::string& message) {
  if (buf == nullptr || size == 0) return;
  const std::size_t n = std::min(size - 1, message.size());
  std::memcpy(buf, message.data(), n);
  buf[n] = '\0';
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyImage: return BP_ERR_EMPTY_IMAGE;
    case ErrorCode::kDimensionNotDivisible:
      return BP_ERR_DIMENSION_NOT_DIVISIBLE;
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kShapeMismatch:
      return BP_ERR_INVALID_ARGUMENT;
    default: return BP_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" int bp_compute_retain_mask(
    const uint8_t* pixels, size_t size, uint32_t width, uint32_t height,
    uint32_t channels, size_t row_stride, const char* predictor,
    const char* metric, double tau, uint32_t block_size, const char* pad_mode,
    bp_mask_result* out, char* error, size_t error_size) {
  if (out == nullptr) {
    set_error(error, error_size, "output pointer is NULL");
    return BP_ERR_INVALID_ARGUMENT;
  }
  *out = bp_mask_result{};
  if (pixels == nullptr) {
    set_error(error, error_size, "pixel pointer is NULL");
    return BP_ERR_INVALID_ARGUMENT;
  }
  if (row_stride != static_cast<std::size_t>(width) * channels) {
    set_error(error, error_size,
              "buffer is not contiguous (row stride " +
                  std::to_string(row_stride) + ", expected " +
                  std::to_string(static_cast<std::size_t>(width) * channels) +
                  "); pass a contiguous copy");
    return BP_ERR_NON_CONTIGUOUS;
  }
  try {
    blockprune::CodecConfig config;
    if (predictor) config.predictor = blockprune::parse_predictor(predictor);
    if (metric) config.metric = blockprune::parse_metric(metric);
    if (pad_mode) config.pad_mode = blockprune::parse_pad_mode(pad_mode);
    config.tau = blockprune::Tau::from_double(tau);
    config.block_size = block_size;

    const blockprune::ImageView view{width, height, channels, {pixels, size}};
    const blockprune::RetainMask mask =
        blockprune::compute_retain_mask(view, config);

    const auto flags = mask.flags();
    const auto positions = mask.positions();
    auto* kept = static_cast<uint8_t*>(std::malloc(flags.size()));
    auto* pos = static_cast<uint32_t*>(
        std::malloc(positions.size() * 2 * sizeof(uint32_t)));
    if (kept == nullptr || pos == nullptr) {
      std::free(kept);
      std::free(pos);
      set_error(error, error_size, "out of memory");
      return BP_ERR_INTERNAL;
    }
    std::memcpy(kept, flags.data(), flags.size());
    for (std::size_t i = 0; i < positions.size(); ++i) {
      pos[2 * i] = positions[i].row;
      pos[2 * i + 1] = positions[i].col;
    }
    out->rows = mask.rows();
    out->cols = mask.cols();
    out->kept = kept;
    out->positions = pos;
    out->retained_count = mask.retained_count();
    out->retain_ratio = mask.retain_ratio();
    return BP_OK;
  } catch (const blockprune::Error& e) {
    set_error(error, error_size, e.what());
    return status_for(e.code());
  } catch (const std::exception& e) {
    set_error(error, error_size, e.what());
    return BP_ERR_INTERNAL;
  }
}

extern "C" void bp_mask_result_free(bp_mask_result* result) {
  if (result == nullptr) return;
  std::free(result->kept);
  std::free(result->positions);
  *result = bp_mask_result{};
}

extern "C" const char* bp_version(void) { return blockprune::kVersion; }
