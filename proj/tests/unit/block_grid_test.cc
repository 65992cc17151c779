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

#include <gtest/gtest.h>

#include <vector>

#include "blockprune/error.h"
#include "blockprune/image.h"
#include "test_util.h"

namespace blockprune {
namespace {

using testing::make_image;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no Error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(PixelImage, RejectsBadShapes) {
  EXPECT_EQ(code_of([] { PixelImage(0, 4, 1); }), ErrorCode::kEmptyImage);
  EXPECT_EQ(code_of([] { PixelImage(4, 4, 2); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { PixelImage(2, 2, 1, std::vector<std::uint8_t>(3)); }),
            ErrorCode::kInvalidArgument);
}

TEST(Partition, ExactDivision) {
  const PixelImage img = make_image(64, 64, 1, [](auto x, auto y) {
    return (x / 32) * 10 + (y / 32);
  });
  const BlockGrid grid = partition(img, 32, PadMode::kReject);
  EXPECT_EQ(grid.rows(), 2u);
  EXPECT_EQ(grid.cols(), 2u);
  EXPECT_EQ(grid.block_count(), 4u);
  EXPECT_EQ(grid.at(0, 1).at(0, 0, 0), 10);
  EXPECT_EQ(grid.at(1, 0).at(5, 5, 0), 1);
}

TEST(Partition, RejectNonMultiple) {
  const PixelImage img(33, 32, 1);
  EXPECT_EQ(code_of([&] { partition(img, 32, PadMode::kReject); }),
            ErrorCode::kDimensionNotDivisible);
}

TEST(Partition, InvalidBlockSize) {
  const PixelImage img(32, 32, 1);
  EXPECT_EQ(code_of([&] { partition(img, 0, PadMode::kReject); }),
            ErrorCode::kInvalidArgument);
}

// Reference partitioner: per-sample clamped lookup, nothing else.
std::uint8_t naive_sample(const PixelImage& img, std::uint32_t bs,
                          std::uint32_t r, std::uint32_t c, std::uint32_t x,
                          std::uint32_t y, std::uint32_t ch) {
  std::uint32_t sx = c * bs + x;
  std::uint32_t sy = r * bs + y;
  if (sx >= img.width()) sx = img.width() - 1;
  if (sy >= img.height()) sy = img.height() - 1;
  return img.at(sx, sy, ch);
}

TEST(Partition, EdgeReplicate33x32) {
  const PixelImage img =
      make_image(33, 32, 1, [](auto x, auto y) { return x * 7 + y * 3; });
  const BlockGrid grid = partition(img, 32, PadMode::kEdgeReplicate);
  ASSERT_EQ(grid.rows(), 1u);
  ASSERT_EQ(grid.cols(), 2u);
  for (std::uint32_t y = 0; y < 32; ++y) {
    for (std::uint32_t x = 0; x < 32; ++x) {
      EXPECT_EQ(grid.at(0, 0).at(x, y, 0), naive_sample(img, 32, 0, 0, x, y, 0));
      EXPECT_EQ(grid.at(0, 1).at(x, y, 0), naive_sample(img, 32, 0, 1, x, y, 0));
    }
    // Columns 1..31 of the second block repeat source column 32.
    for (std::uint32_t x = 1; x < 32; ++x) {
      EXPECT_EQ(grid.at(0, 1).at(x, y, 0), img.at(32, y, 0));
    }
  }
}

TEST(Partition, EdgeReplicateMatchesNaiveRandomized) {
  testing::GridGenerator gen(7);
  for (int t = 0; t < 50; ++t) {
    const std::uint32_t ch = gen.uniform(0, 1) ? 3 : 1;
    const std::uint32_t bs = gen.uniform(1, 9);
    const PixelImage img = gen.image(gen.uniform(1, 40), gen.uniform(1, 40), ch);
    const BlockGrid grid = partition(img, bs, PadMode::kEdgeReplicate);
    ASSERT_EQ(grid.rows(), (img.height() + bs - 1) / bs);
    ASSERT_EQ(grid.cols(), (img.width() + bs - 1) / bs);
    for (std::uint32_t r = 0; r < grid.rows(); ++r) {
      for (std::uint32_t c = 0; c < grid.cols(); ++c) {
        for (std::uint32_t y = 0; y < bs; ++y) {
          for (std::uint32_t x = 0; x < bs; ++x) {
            for (std::uint32_t z = 0; z < ch; ++z) {
              ASSERT_EQ(grid.at(r, c).at(x, y, z),
                        naive_sample(img, bs, r, c, x, y, z));
            }
          }
        }
      }
    }
    EXPECT_EQ(assemble(grid, img.width(), img.height()), img);
  }
}

TEST(Assemble, RejectsOversizedCrop) {
  const BlockGrid grid = testing::make_grid(1, 1, 4, 1, [](auto, auto) { return 1; });
  EXPECT_EQ(code_of([&] { assemble(grid, 5, 4); }), ErrorCode::kConfigMismatch);
}

}  // namespace
}  // namespace blockprune
