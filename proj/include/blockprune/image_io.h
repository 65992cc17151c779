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

#ifndef BLOCKPRUNE_IMAGE_IO_H_
#define BLOCKPRUNE_IMAGE_IO_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "blockprune/image.h"

namespace blockprune {

// Reads 8-bit PNG (gray or RGB; palettes are expanded, alpha is dropped,
// 16-bit samples are reduced) and binary PGM/PPM (P5/P6, maxval 255). The
// format is chosen from the file signature. Throws Error(kIo) if the file
// cannot be opened and Error(kDecode) for anything it cannot parse.
PixelImage read_image(const std::filesystem::path& path);
PixelImage decode_image(std::span<const std::uint8_t> bytes);

// Writes PNG for a ".png" extension, otherwise PGM (1 channel) / PPM
// (3 channels).
void write_image(const std::filesystem::path& path, const PixelImage& image);

std::vector<std::uint8_t> encode_png(const PixelImage& image);
std::vector<std::uint8_t> encode_pnm(const PixelImage& image);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path,
                       std::span<const std::uint8_t> bytes);

}  // namespace blockprune

#endif  // BLOCKPRUNE_IMAGE_IO_H_
