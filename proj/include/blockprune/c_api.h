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

#ifndef BLOCKPRUNE_C_API_H_
#define BLOCKPRUNE_C_API_H_

/* C interface for foreign-language bindings: retain-mask computation and a
 * version query. Calls are reentrant and never call back into the host. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bp_status {
  BP_OK = 0,
  BP_ERR_INVALID_ARGUMENT = 1,
  BP_ERR_NON_CONTIGUOUS = 2,
  BP_ERR_EMPTY_IMAGE = 3,
  BP_ERR_DIMENSION_NOT_DIVISIBLE = 4,
  BP_ERR_INTERNAL = 5,
} bp_status;

typedef struct bp_mask_result {
  uint32_t rows;
  uint32_t cols;
  /* rows * cols row-major flags, 1 = kept. */
  uint8_t* kept;
  /* retained_count (row, col) pairs, interleaved, in scan order. */
  uint32_t* positions;
  size_t retained_count;
  double retain_ratio;
} bp_mask_result;

/* Computes the retain mask of an 8-bit height x width x channels image.
 *
 * `row_stride` is the distance in bytes between row starts; it must equal
 * width * channels (a contiguous buffer), otherwise BP_ERR_NON_CONTIGUOUS is
 * returned and the caller should pass a contiguous copy. Enum arguments use
 * the CLI spellings ("raster"/"serpentine"/"pred2d", "mae"/"max",
 * "reject"/"edge"); NULL selects the default. On failure a message is copied
 * into `error` (if non-NULL, truncated to error_size) and `out` is left
 * zeroed. A successful result must be released with bp_mask_result_free. */
int bp_compute_retain_mask(const uint8_t* pixels, size_t size, uint32_t width,
                           uint32_t height, uint32_t channels,
                           size_t row_stride, const char* predictor,
                           const char* metric, double tau, uint32_t block_size,
                           const char* pad_mode, bp_mask_result* out,
                           char* error, size_t error_size);

void bp_mask_result_free(bp_mask_result* result);

/* Semantic version string of the native library. */
const char* bp_version(void);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* BLOCKPRUNE_C_API_H_ */
