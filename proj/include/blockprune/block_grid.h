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

#ifndef BLOCKPRUNE_BLOCK_GRID_H_
#define BLOCKPRUNE_BLOCK_GRID_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "blockprune/image.h"

namespace blockprune {

enum class PadMode : std::uint8_t {
  kReject,
  kEdgeReplicate,
};

// One side x side x channels tile, row-major and channel-interleaved.
// Equality is samplewise (and requires matching shape).
class Block {
 public:
  Block() = default;
  Block(std::uint32_t side, std::uint32_t channels);
  Block(std::uint32_t side, std::uint32_t channels,
        std::vector<std::uint8_t> samples);

  std::uint32_t side() const { return side_; }
  std::uint32_t channels() const { return channels_; }
  std::size_t size() const { return samples_.size(); }

  std::span<const std::uint8_t> samples() const { return samples_; }
  std::span<std::uint8_t> mutable_samples() { return samples_; }

  std::uint8_t at(std::uint32_t x, std::uint32_t y, std::uint32_t c) const {
    return samples_[(static_cast<std::size_t>(y) * side_ + x) * channels_ + c];
  }

  bool operator==(const Block&) const = default;

 private:
  std::uint32_t side_ = 0;
  std::uint32_t channels_ = 0;
  std::vector<std::uint8_t> samples_;
};

struct GridPos {
  std::uint32_t row = 0;
  std::uint32_t col = 0;

  bool operator==(const GridPos&) const = default;
};

// An image cut into rows x cols non-overlapping blocks of block_size pixels
// per side. Blocks are stored row-major.
class BlockGrid {
 public:
  BlockGrid() = default;
  BlockGrid(std::uint32_t rows, std::uint32_t cols, std::uint32_t block_size,
            std::uint32_t channels, std::vector<Block> blocks);

  std::uint32_t rows() const { return rows_; }
  std::uint32_t cols() const { return cols_; }
  std::uint32_t block_size() const { return block_size_; }
  std::uint32_t channels() const { return channels_; }
  std::size_t block_count() const { return blocks_.size(); }

  std::size_t linear(GridPos p) const {
    return static_cast<std::size_t>(p.row) * cols_ + p.col;
  }
  const Block& at(GridPos p) const { return blocks_[linear(p)]; }
  const Block& at(std::uint32_t row, std::uint32_t col) const {
    return at(GridPos{row, col});
  }
  Block& at(GridPos p) { return blocks_[linear(p)]; }
  std::span<const Block> blocks() const { return blocks_; }

  bool operator==(const BlockGrid&) const = default;

 private:
  std::uint32_t rows_ = 0;
  std::uint32_t cols_ = 0;
  std::uint32_t block_size_ = 0;
  std::uint32_t channels_ = 0;
  std::vector<Block> blocks_;
};

// Cuts `image` into a grid of ceil(h/bs) x ceil(w/bs) blocks. Under
// kEdgeReplicate, samples past the right/bottom border copy the nearest edge
// pixel; under kReject, non-multiple dimensions raise kDimensionNotDivisible.
BlockGrid partition(const ImageView& image, std::uint32_t block_size,
                    PadMode pad_mode);
inline BlockGrid partition(const PixelImage& image, std::uint32_t block_size,
                           PadMode pad_mode) {
  return partition(image.view(), block_size, pad_mode);
}

// Inverse of partition: stitches the grid back together and crops to
// width x height (which must not exceed the grid's pixel extent).
PixelImage assemble(const BlockGrid& grid, std::uint32_t width,
                    std::uint32_t height);

}  // namespace blockprune

#endif  // BLOCKPRUNE_BLOCK_GRID_H_
