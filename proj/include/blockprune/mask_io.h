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

#ifndef BLOCKPRUNE_MASK_IO_H_
#define BLOCKPRUNE_MASK_IO_H_

#include <optional>
#include <string>
#include <string_view>

#include "blockprune/codec.h"

namespace blockprune {

// Mask file (JSON):
//   { "rows": R, "cols": C, "retained_count": n, "retain_ratio": x,
//     "positions": [[row, col], ...], "kept": [[0|1, ...], ...],
//     "config": {...} }
// `positions` keeps the mask's own order (scan order for codec masks);
// `config` is present only for codec masks.
std::string mask_to_json(const RetainMask& mask,
                         const std::optional<CodecConfig>& config);
// R lines of C comma-separated 0/1 flags.
std::string mask_to_csv(const RetainMask& mask);

// Rebuilds a mask from `positions` (in file order) and checks it against
// `kept` and `retained_count` when present. Throws Error(kDecode).
RetainMask mask_from_json(std::string_view text);

}  // namespace blockprune

#endif  // BLOCKPRUNE_MASK_IO_H_
