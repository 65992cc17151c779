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

#ifndef BLOCKPRUNE_CONTAINER_H_
#define BLOCKPRUNE_CONTAINER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "blockprune/codec.h"

namespace blockprune {

// PXPR container, all multi-byte fields little-endian:
//
//   offset  size  field
//        0     4  magic "PXPR"
//        4     1  format version (kContainerVersion)
//        5     1  predictor (0 raster, 1 serpentine, 2 pred2d)
//        6     1  metric (0 mae, 1 max)
//        7     2  tau * 10000
//        9     2  block_size
//       11     1  channels
//       12     4  original width
//       16     4  original height
//       20     2  grid rows
//       22     2  grid cols
//       24     4  retained_count
//       28        retained_count x { row u16, col u16, block samples }
//
// Readers reject: wrong magic (kBadMagic), other versions
// (kUnsupportedVersion), short input (kTruncated), invalid fields, bad entry
// order or trailing bytes (kMalformedStream), and grid dims that disagree
// with the image dims (kConfigMismatch).
inline constexpr std::uint8_t kContainerVersion = 1;
inline constexpr std::size_t kContainerHeaderSize = 28;

std::vector<std::uint8_t> serialize(const CompressedImage& comp);
CompressedImage deserialize(std::span<const std::uint8_t> bytes);

}  // namespace blockprune

#endif  // BLOCKPRUNE_CONTAINER_H_
