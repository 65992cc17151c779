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

#include "blockprune/container.h"

#include <gtest/gtest.h>

#include <vector>

#include "blockprune/error.h"
#include "test_util.h"

namespace blockprune {
namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no Error thrown";
  return ErrorCode::kInvalidArgument;
}

CompressedImage small_image() {
  CompressedImage comp;
  comp.config.predictor = Predictor::kRaster;
  comp.config.metric = Metric::kMax;
  comp.config.tau = Tau::from_double(0.05);
  comp.config.block_size = 2;
  comp.rows = 1;
  comp.cols = 2;
  comp.channels = 1;
  comp.width = 4;
  comp.height = 2;
  comp.entries.push_back({GridPos{0, 0}, Block(2, 1, {1, 2, 3, 4})});
  comp.entries.push_back({GridPos{0, 1}, Block(2, 1, {90, 91, 92, 93})});
  return comp;
}

const std::vector<std::uint8_t> kGolden = {
    'P', 'X', 'P', 'R',      // magic
    0x01,                    // version
    0x00,                    // raster
    0x01,                    // max
    0xF4, 0x01,              // tau 500
    0x02, 0x00,              // block size
    0x01,                    // channels
    0x04, 0x00, 0x00, 0x00,  // width
    0x02, 0x00, 0x00, 0x00,  // height
    0x01, 0x00,              // rows
    0x02, 0x00,              // cols
    0x02, 0x00, 0x00, 0x00,  // retained count
    0x00, 0x00, 0x00, 0x00, 1, 2, 3, 4,
    0x00, 0x00, 0x01, 0x00, 90, 91, 92, 93,
};

TEST(Container, GoldenBytes) {
  const auto bytes = serialize(small_image());
  EXPECT_EQ(bytes, kGolden);
  EXPECT_EQ(kContainerHeaderSize, 28u);
  EXPECT_EQ(deserialize(kGolden), small_image());
}

TEST(Container, RoundTripRandomized) {
  testing::GridGenerator gen(4);
  for (int t = 0; t < 100; ++t) {
    const std::uint32_t ch = t % 2 ? 3 : 1;
    const BlockGrid grid = gen.grid(4, ch, testing::ContentMix::kMixed, 9);
    CodecConfig cfg;
    cfg.block_size = 4;
    cfg.predictor = static_cast<Predictor>(t % 3);
    cfg.metric = static_cast<Metric>(t % 2);
    cfg.tau = Tau::from_units(static_cast<std::uint32_t>(t * 37 % 10001));
    const Encoding enc = compress(grid, cfg);
    const auto bytes = serialize(enc.compressed);
    const CompressedImage back = deserialize(bytes);
    EXPECT_EQ(back, enc.compressed);
    EXPECT_EQ(serialize(back), bytes);
    EXPECT_EQ(decompress(back), enc.working_state);
  }
}

TEST(Container, EdgePaddedImageRoundTrip) {
  testing::GridGenerator gen(12);
  const PixelImage img = gen.image(13, 7, 3);
  CodecConfig cfg;
  cfg.block_size = 4;
  cfg.pad_mode = PadMode::kEdgeReplicate;
  const Encoding enc = compress(img, cfg);
  const CompressedImage back = deserialize(serialize(enc.compressed));
  EXPECT_EQ(back.config.pad_mode, PadMode::kEdgeReplicate);
  EXPECT_EQ(decompress_image(back), img);
}

TEST(Container, RejectsCorruptHeaders) {
  auto with = [](std::size_t offset, std::uint8_t value) {
    auto b = kGolden;
    b[offset] = value;
    return b;
  };
  EXPECT_EQ(code_of([&] { deserialize(with(0, 'Q')); }), ErrorCode::kBadMagic);
  EXPECT_EQ(code_of([&] { deserialize(with(4, 2)); }),
            ErrorCode::kUnsupportedVersion);
  EXPECT_EQ(code_of([&] { deserialize(with(4, 0)); }),
            ErrorCode::kUnsupportedVersion);
  EXPECT_EQ(code_of([&] { deserialize(with(5, 3)); }),
            ErrorCode::kMalformedStream);
  EXPECT_EQ(code_of([&] { deserialize(with(6, 2)); }),
            ErrorCode::kMalformedStream);
  EXPECT_EQ(code_of([&] { deserialize(with(8, 0x30)); }),  // tau 12532
            ErrorCode::kMalformedStream);
  EXPECT_EQ(code_of([&] { deserialize(with(11, 2)); }),
            ErrorCode::kMalformedStream);
  // Zero retained count.
  EXPECT_EQ(code_of([&] { deserialize(with(24, 0)); }),
            ErrorCode::kMalformedStream);
  // More retained entries than grid cells.
  EXPECT_EQ(code_of([&] { deserialize(with(24, 3)); }),
            ErrorCode::kMalformedStream);
  // Grid rows disagree with the image height.
  EXPECT_EQ(code_of([&] { deserialize(with(20, 2)); }),
            ErrorCode::kConfigMismatch);
  // Width larger than the grid covers.
  EXPECT_EQ(code_of([&] { deserialize(with(12, 9)); }),
            ErrorCode::kConfigMismatch);
  // First entry is not the anchor.
  EXPECT_EQ(code_of([&] { deserialize(with(30, 1)); }),
            ErrorCode::kMalformedStream);
  // Second entry out of range.
  EXPECT_EQ(code_of([&] { deserialize(with(38, 5)); }),
            ErrorCode::kMalformedStream);
}

TEST(Container, RejectsEveryTruncation) {
  for (std::size_t n = 0; n < kGolden.size(); ++n) {
    const std::vector<std::uint8_t> prefix(kGolden.begin(), kGolden.begin() + n);
    const ErrorCode code = code_of([&] { deserialize(prefix); });
    if (n >= 4) {
      EXPECT_EQ(code, ErrorCode::kTruncated) << "length " << n;
    } else {
      EXPECT_TRUE(code == ErrorCode::kTruncated || code == ErrorCode::kBadMagic);
    }
  }
}

TEST(Container, RejectsTrailingBytes) {
  auto b = kGolden;
  b.push_back(0);
  EXPECT_EQ(code_of([&] { deserialize(b); }), ErrorCode::kMalformedStream);
}

TEST(Container, HugeCountDoesNotAllocate) {
  auto b = kGolden;
  b.resize(kContainerHeaderSize);
  b[20] = 0xFF; b[21] = 0xFF; b[22] = 0xFF; b[23] = 0xFF;  // 65535 x 65535
  b[24] = 0xFF; b[25] = 0xFF; b[26] = 0xFF; b[27] = 0x7F;
  const ErrorCode code = code_of([&] { deserialize(b); });
  EXPECT_TRUE(code == ErrorCode::kTruncated || code == ErrorCode::kConfigMismatch);
}

TEST(Container, OversizedGridCannotBeWritten) {
  // Valid in memory, but 70000 grid rows do not fit the u16 field.
  CompressedImage comp;
  comp.config.block_size = 1;
  comp.rows = 70000;
  comp.cols = 1;
  comp.channels = 1;
  comp.width = 1;
  comp.height = 70000;
  comp.entries.push_back({GridPos{0, 0}, Block(1, 1, {7})});
  EXPECT_NO_THROW(decompress(comp));
  EXPECT_EQ(code_of([&] { serialize(comp); }), ErrorCode::kOverflow);
}

}  // namespace
}  // namespace blockprune
