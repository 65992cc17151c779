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

#include "blockprune/baselines.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "blockprune/error.h"

namespace blockprune {

SeededRng::SeededRng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t SeededRng::below(std::uint64_t bound) {
  if (bound == 0) {
    throw Error(ErrorCode::kInvalidArgument, "empty sampling range");
  }
  // Reject the top partial bucket so every residue is equally likely.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % bound;
}

std::vector<std::size_t> SeededRng::sample(std::size_t n, std::size_t count) {
  if (count > n) {
    throw Error(ErrorCode::kInvalidArgument, "sample larger than population");
  }
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(below(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

namespace {

void check_budget(Budget budget, std::size_t blocks) {
  if (budget.target_retained < 1 || budget.target_retained > blocks) {
    throw Error(ErrorCode::kBudgetOutOfRange,
                "budget " + std::to_string(budget.target_retained) +
                    " outside [1, " + std::to_string(blocks) + "]");
  }
}

GridPos pos_of(std::size_t index, std::uint32_t cols) {
  return GridPos{static_cast<std::uint32_t>(index / cols),
                 static_cast<std::uint32_t>(index % cols)};
}

}  // namespace

RetainMask random_mask(std::uint32_t rows, std::uint32_t cols, Budget budget,
                       std::uint64_t seed) {
  const std::size_t n = static_cast<std::size_t>(rows) * cols;
  check_budget(budget, n);
  SeededRng rng(seed);
  auto picks = rng.sample(n, budget.target_retained);
  std::sort(picks.begin(), picks.end());
  RetainMask mask(rows, cols);
  for (std::size_t i : picks) mask.keep(pos_of(i, cols));
  return mask;
}

Components connected_components(const BlockGrid& grid) {
  constexpr std::uint32_t kUnlabeled = std::numeric_limits<std::uint32_t>::max();
  Components out;
  out.rows = grid.rows();
  out.cols = grid.cols();
  out.labels.assign(grid.block_count(), kUnlabeled);
  const std::uint32_t rows = grid.rows();
  const std::uint32_t cols = grid.cols();
  const auto blocks = grid.blocks();

  std::vector<std::size_t> stack;
  for (std::size_t seed = 0; seed < blocks.size(); ++seed) {
    if (out.labels[seed] != kUnlabeled) continue;
    const auto label = static_cast<std::uint32_t>(out.sizes.size());
    std::size_t size = 0;
    out.labels[seed] = label;
    stack.push_back(seed);
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      ++size;
      const std::size_t r = i / cols;
      const std::size_t c = i % cols;
      const auto visit = [&](std::size_t j) {
        if (out.labels[j] == kUnlabeled && blocks[j] == blocks[seed]) {
          out.labels[j] = label;
          stack.push_back(j);
        }
      };
      if (c > 0) visit(i - 1);
      if (c + 1 < cols) visit(i + 1);
      if (r > 0) visit(i - cols);
      if (r + 1 < rows) visit(i + cols);
    }
    out.sizes.push_back(size);
  }
  return out;
}

std::vector<std::size_t> allocate_budget(const Components& components,
                                         std::size_t budget) {
  const std::size_t k = components.count();
  const auto& sizes = components.sizes;
  std::vector<std::size_t> alloc(k, 0);

  // Largest components first; ties by lower label.
  std::vector<std::size_t> by_size(k);
  std::iota(by_size.begin(), by_size.end(), std::size_t{0});
  std::stable_sort(by_size.begin(), by_size.end(),
                   [&](std::size_t a, std::size_t b) {
                     return sizes[a] > sizes[b];
                   });

  if (budget < k) {
    for (std::size_t i = 0; i < budget; ++i) alloc[by_size[i]] = 1;
    return alloc;
  }

  const std::size_t total =
      std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
  // Exact quota budget * size / total as floor plus remainder numerator.
  std::vector<std::size_t> remainder(k);
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const unsigned __int128 num =
        static_cast<unsigned __int128>(budget) * sizes[i];
    alloc[i] = static_cast<std::size_t>(num / total);
    remainder[i] = static_cast<std::size_t>(num % total);
    assigned += alloc[i];
  }
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     if (remainder[a] != remainder[b]) {
                       return remainder[a] > remainder[b];
                     }
                     return sizes[a] > sizes[b];
                   });
  for (std::size_t i = 0; assigned < budget; ++i, ++assigned) {
    ++alloc[order[i]];
  }

  // Minimum one block per component.
  for (std::size_t i = 0; i < k; ++i) {
    if (alloc[i] != 0) continue;
    std::size_t donor = 0;
    for (std::size_t j = 1; j < k; ++j) {
      if (alloc[j] > alloc[donor]) donor = j;
    }
    --alloc[donor];
    alloc[i] = 1;
  }
  return alloc;
}

ConnCompResult conncomp_mask(const BlockGrid& grid, Budget budget,
                             std::uint64_t seed) {
  check_budget(budget, grid.block_count());
  const Components comps = connected_components(grid);
  const auto alloc = allocate_budget(comps, budget.target_retained);

  std::vector<std::vector<std::size_t>> members(comps.count());
  for (std::size_t i = 0; i < comps.labels.size(); ++i) {
    members[comps.labels[i]].push_back(i);
  }
  SeededRng rng(seed);
  std::vector<std::size_t> picks;
  picks.reserve(budget.target_retained);
  for (std::size_t label = 0; label < comps.count(); ++label) {
    for (std::size_t j : rng.sample(members[label].size(), alloc[label])) {
      picks.push_back(members[label][j]);
    }
  }
  std::sort(picks.begin(), picks.end());

  ConnCompResult result;
  result.below_component_count = budget.target_retained < comps.count();
  result.mask = RetainMask(grid.rows(), grid.cols());
  for (std::size_t i : picks) result.mask.keep(pos_of(i, grid.cols()));
  return result;
}

Dimensions resize_target_dims(std::uint32_t width, std::uint32_t height,
                              Budget budget, std::uint32_t block_size) {
  if (budget.target_retained < 1) {
    throw Error(ErrorCode::kBudgetTooSmall, "budget cannot fit one block");
  }
  if (width == 0 || height == 0 || block_size == 0) {
    throw Error(ErrorCode::kInvalidArgument, "dimensions must be positive");
  }
  const std::uint64_t max_cols = (std::uint64_t{width} + block_size - 1) / block_size;
  const std::uint64_t max_rows = (std::uint64_t{height} + block_size - 1) / block_size;
  const std::uint64_t cap = budget.target_retained;
  const double aspect = static_cast<double>(height) / width;  // rows per col

  std::uint64_t best_c = 1;
  std::uint64_t best_r = 1;
  std::uint64_t best_area = 0;
  double best_err = 0.0;
  for (std::uint64_t c = 1; c <= std::min(max_cols, cap); ++c) {
    for (std::uint64_t r = 1; r <= std::min(max_rows, cap / c); ++r) {
      // x in [c-1, c+1] and x * aspect in [r-1, r+1] must intersect.
      const double lo = std::max(static_cast<double>(c) - 1.0,
                                 (static_cast<double>(r) - 1.0) / aspect);
      const double hi = std::min(static_cast<double>(c) + 1.0,
                                 (static_cast<double>(r) + 1.0) / aspect);
      if (lo > hi || hi <= 0.0) continue;
      const std::uint64_t area = c * r;
      const double err = std::abs(static_cast<double>(c) * height -
                                  static_cast<double>(r) * width);
      // Ascending c, so <= prefers the larger c on an exact tie.
      if (area > best_area || (area == best_area && err <= best_err)) {
        best_c = c;
        best_r = r;
        best_area = area;
        best_err = err;
      }
    }
  }
  return Dimensions{static_cast<std::uint32_t>(best_c * block_size),
                    static_cast<std::uint32_t>(best_r * block_size)};
}

PixelImage resize_bilinear(const PixelImage& image, std::uint32_t width,
                           std::uint32_t height) {
  PixelImage out(width, height, image.channels());
  const double sx = static_cast<double>(image.width()) / width;
  const double sy = static_cast<double>(image.height()) / height;
  const auto clamp_coord = [](double v, std::uint32_t extent) {
    return std::clamp(v, 0.0, static_cast<double>(extent - 1));
  };
  for (std::uint32_t y = 0; y < height; ++y) {
    const double fy = clamp_coord((y + 0.5) * sy - 0.5, image.height());
    const auto y0 = static_cast<std::uint32_t>(fy);
    const std::uint32_t y1 = std::min(y0 + 1, image.height() - 1);
    const double wy = fy - y0;
    for (std::uint32_t x = 0; x < width; ++x) {
      const double fx = clamp_coord((x + 0.5) * sx - 0.5, image.width());
      const auto x0 = static_cast<std::uint32_t>(fx);
      const std::uint32_t x1 = std::min(x0 + 1, image.width() - 1);
      const double wx = fx - x0;
      for (std::uint32_t c = 0; c < image.channels(); ++c) {
        const double top = image.at(x0, y0, c) * (1 - wx) + image.at(x1, y0, c) * wx;
        const double bottom = image.at(x0, y1, c) * (1 - wx) + image.at(x1, y1, c) * wx;
        out.at(x, y, c) = static_cast<std::uint8_t>(
            std::lround(top * (1 - wy) + bottom * wy));
      }
    }
  }
  return out;
}

}  // namespace blockprune
