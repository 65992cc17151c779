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

#include "blockprune/block_grid.h"

#include <algorithm>
#include <string>
#include <utility>

#include "blockprune/error.h"

namespace blockprune {

Block::Block(std::uint32_t side, std::uint32_t channels)
    : side_(side), channels_(channels),
      samples_(static_cast<std::size_t>(side) * side * channels, 0) {}

Block::Block(std::uint32_t side, std::uint32_t channels,
             std::vector<std::uint8_t> samples)
    : side_(side), channels_(channels), samples_(std::move(samples)) {
  if (samples_.size() != static_cast<std::size_t>(side) * side * channels) {
    throw Error(ErrorCode::kShapeMismatch,
                "block sample count does not match its shape");
  }
}

BlockGrid::BlockGrid(std::uint32_t rows, std::uint32_t cols,
                     std::uint32_t block_size, std::uint32_t channels,
                     std::vector<Block> blocks)
    : rows_(rows), cols_(cols), block_size_(block_size), channels_(channels),
      blocks_(std::move(blocks)) {
  if (blocks_.size() != static_cast<std::size_t>(rows) * cols) {
    throw Error(ErrorCode::kShapeMismatch, "grid block count mismatch");
  }
  for (const Block& b : blocks_) {
    if (b.side() != block_size || b.channels() != channels) {
      throw Error(ErrorCode::kShapeMismatch, "grid holds a mis-shaped block");
    }
  }
}

BlockGrid partition(const ImageView& image, std::uint32_t block_size,
                    PadMode pad_mode) {
  if (image.data.empty() || image.width == 0 || image.height == 0) {
    throw Error(ErrorCode::kEmptyImage, "cannot partition an empty image");
  }
  image.validate();
  if (block_size == 0) {
    throw Error(ErrorCode::kInvalidArgument, "block_size must be positive");
  }
  const std::uint32_t width = image.width;
  const std::uint32_t height = image.height;
  if (pad_mode == PadMode::kReject &&
      (width % block_size != 0 || height % block_size != 0)) {
    throw Error(ErrorCode::kDimensionNotDivisible,
                std::to_string(width) + "x" + std::to_string(height) +
                    " is not a multiple of block size " +
                    std::to_string(block_size));
  }
  const std::uint32_t rows = (height + block_size - 1) / block_size;
  const std::uint32_t cols = (width + block_size - 1) / block_size;
  const std::uint32_t channels = image.channels;
  const std::size_t row_bytes = static_cast<std::size_t>(block_size) * channels;

  std::vector<Block> blocks;
  blocks.reserve(static_cast<std::size_t>(rows) * cols);
  for (std::uint32_t r = 0; r < rows; ++r) {
    for (std::uint32_t c = 0; c < cols; ++c) {
      Block block(block_size, channels);
      auto out = block.mutable_samples();
      const std::uint32_t x0 = c * block_size;
      for (std::uint32_t y = 0; y < block_size; ++y) {
        const std::uint32_t sy = std::min(r * block_size + y, height - 1);
        std::uint8_t* dst = out.data() + y * row_bytes;
        if (x0 + block_size <= width) {
          std::copy_n(image.data.data() + image.index(x0, sy, 0), row_bytes,
                      dst);
          continue;
        }
        for (std::uint32_t x = 0; x < block_size; ++x) {
          const std::uint32_t sx = std::min(x0 + x, width - 1);
          for (std::uint32_t ch = 0; ch < channels; ++ch) {
            dst[x * channels + ch] = image.data[image.index(sx, sy, ch)];
          }
        }
      }
      blocks.push_back(std::move(block));
    }
  }
  return BlockGrid(rows, cols, block_size, channels, std::move(blocks));
}

PixelImage assemble(const BlockGrid& grid, std::uint32_t width,
                    std::uint32_t height) {
  const std::uint32_t bs = grid.block_size();
  if (static_cast<std::uint64_t>(width) > std::uint64_t{grid.cols()} * bs ||
      static_cast<std::uint64_t>(height) > std::uint64_t{grid.rows()} * bs) {
    throw Error(ErrorCode::kConfigMismatch,
                "crop size exceeds the grid's pixel extent");
  }
  PixelImage image(width, height, grid.channels());
  const std::uint32_t channels = grid.channels();
  for (std::uint32_t y = 0; y < height; ++y) {
    const std::uint32_t r = y / bs;
    const std::uint32_t by = y % bs;
    for (std::uint32_t c = 0; c * bs < width; ++c) {
      const std::uint32_t x0 = c * bs;
      const std::uint32_t span_px = std::min(bs, width - x0);
      const auto src = grid.at(r, c).samples();
      std::copy_n(src.data() + static_cast<std::size_t>(by) * bs * channels,
                  static_cast<std::size_t>(span_px) * channels,
                  image.mutable_data().data() + image.index(x0, y, 0));
    }
  }
  return image;
}

}  // namespace blockprune
