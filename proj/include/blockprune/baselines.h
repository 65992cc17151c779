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

#ifndef BLOCKPRUNE_BASELINES_H_
#define BLOCKPRUNE_BASELINES_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "blockprune/block_grid.h"
#include "blockprune/codec.h"
#include "blockprune/image.h"

namespace blockprune {

// Token budget for the budget-matched baselines; normally the retained count
// of a codec mask on the same image.
struct Budget {
  std::size_t target_retained = 0;

  static Budget from_mask(const RetainMask& mask) {
    return Budget{mask.retained_count()};
  }
};

// Deterministic generator shared by the baselines: std::mt19937_64 (whose
// output sequence is fixed by the C++ standard) with rejection sampling for
// bounded draws, so masks reproduce across standard libraries.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed);

  // Uniform in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  // `count` distinct indices from [0, n), by partial Fisher-Yates. The
  // result is in draw order.
  std::vector<std::size_t> sample(std::size_t n, std::size_t count);

 private:
  std::mt19937_64 engine_;
};

// Keeps exactly budget blocks drawn uniformly without replacement. The anchor
// is not forced. Throws Error(kBudgetOutOfRange) unless
// 1 <= budget <= rows * cols.
RetainMask random_mask(std::uint32_t rows, std::uint32_t cols, Budget budget,
                       std::uint64_t seed);

// 4-connected components of blocks with identical content. Labels are
// assigned in raster order of each component's first block.
struct Components {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<std::uint32_t> labels;  // row-major
  std::vector<std::size_t> sizes;     // by label

  std::size_t count() const { return sizes.size(); }
};

Components connected_components(const BlockGrid& grid);

// How many blocks each component keeps under `budget`. With budget >=
// component count: proportional quotas budget * size / N, floored, the rest by
// largest remainder (ties: larger component, then lower label), then every
// component left at zero takes one block from the current largest allocation
// (ties: lower label). Below the component count: one block for each of the
// `budget` largest components (ties: lower label).
std::vector<std::size_t> allocate_budget(const Components& components,
                                         std::size_t budget);

struct ConnCompResult {
  RetainMask mask;
  // Set when budget < component count; see allocate_budget.
  bool below_component_count = false;
};

// Throws Error(kBudgetOutOfRange) unless 1 <= budget <= block count.
ConnCompResult conncomp_mask(const BlockGrid& grid, Budget budget,
                             std::uint64_t seed);

struct Dimensions {
  std::uint32_t width = 0;
  std::uint32_t height = 0;

  bool operator==(const Dimensions&) const = default;
};

// Largest block-multiple dimensions with at most `budget` blocks whose block
// counts (c, r) keep the aspect ratio within one block: some scale x has
// |c - x| <= 1 and |r - x * H / W| <= 1. Never exceeds the image's own
// (padded) block counts. Ties prefer the smaller |c*H - r*W|, then larger c.
// Throws Error(kBudgetTooSmall) for a zero budget.
Dimensions resize_target_dims(std::uint32_t width, std::uint32_t height,
                              Budget budget, std::uint32_t block_size);

// Bilinear resampling with pixel-center alignment and edge clamping.
PixelImage resize_bilinear(const PixelImage& image, std::uint32_t width,
                           std::uint32_t height);

}  // namespace blockprune

#endif  // BLOCKPRUNE_BASELINES_H_
