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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "blockprune/codec.h"
#include "blockprune/error.h"
#include "blockprune/image_io.h"
#include "blockprune/mask_io.h"
#include "json.hpp"
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

std::vector<std::uint8_t> bytes_of(const std::string& s) {
  return {s.begin(), s.end()};
}

TEST(ImageIo, PngRoundTrip) {
  testing::GridGenerator gen(1);
  for (std::uint32_t ch : {1u, 3u}) {
    const PixelImage img = gen.image(37, 19, ch);
    EXPECT_EQ(decode_image(encode_png(img)), img);
  }
}

TEST(ImageIo, PnmRoundTrip) {
  testing::GridGenerator gen(2);
  for (std::uint32_t ch : {1u, 3u}) {
    const PixelImage img = gen.image(5, 8, ch);
    const auto bytes = encode_pnm(img);
    EXPECT_EQ(bytes[1], ch == 1 ? '5' : '6');
    EXPECT_EQ(decode_image(bytes), img);
  }
}

TEST(ImageIo, PnmHeaderWithComments) {
  std::string s = "P5\n# made by hand\n2 2\n255\n";
  s += std::string("\x01\x02\x03\x04", 4);
  const PixelImage img = decode_image(bytes_of(s));
  EXPECT_EQ(img.width(), 2u);
  EXPECT_EQ(img.at(1, 1, 0), 4);
}

TEST(ImageIo, RejectsBadInput) {
  EXPECT_EQ(code_of([] { decode_image(bytes_of("GIF89a")); }), ErrorCode::kDecode);
  EXPECT_EQ(code_of([] { decode_image(bytes_of("P6\n2 2\n255\nabc")); }),
            ErrorCode::kDecode);
  EXPECT_EQ(code_of([] { decode_image(bytes_of("P5\n2 2\n65535\n")); }),
            ErrorCode::kDecode);
  EXPECT_EQ(code_of([] { decode_image(bytes_of("P5\n0 2\n255\n")); }),
            ErrorCode::kDecode);
  auto png = encode_png(PixelImage(4, 4, 3));
  png.resize(png.size() / 2);
  EXPECT_EQ(code_of([&] { decode_image(png); }), ErrorCode::kDecode);
  EXPECT_EQ(code_of([] { read_image("/nonexistent/dir/x.png"); }), ErrorCode::kIo);
}

TEST(ImageIo, ReadErrorNamesFileOnce) {
  const auto dir = testing::temp_dir("io");
  std::ofstream(dir / "bad.png") << "not an image";
  try {
    read_image(dir / "bad.png");
    FAIL();
  } catch (const Error& e) {
    const std::string what = e.what();
    EXPECT_EQ(what.find("DecodeError"), 0u);
    EXPECT_EQ(what.find("DecodeError", 1), std::string::npos) << what;
    EXPECT_NE(what.find("bad.png"), std::string::npos);
  }
  std::filesystem::remove_all(dir);
}

TEST(ImageIo, AtomicWrite) {
  const auto dir = testing::temp_dir("atomic");
  const auto path = dir / "out.bin";
  write_file_atomic(path, bytes_of("first"));
  write_file_atomic(path, bytes_of("second"));
  EXPECT_EQ(read_file(path), bytes_of("second"));
  EXPECT_FALSE(std::filesystem::exists(dir / "out.bin.tmp"));
  const PixelImage img = testing::make_image(3, 3, 3, [](auto x, auto y) { return x + y; });
  write_image(dir / "a.png", img);
  write_image(dir / "a.ppm", img);
  EXPECT_EQ(read_image(dir / "a.png"), img);
  EXPECT_EQ(read_image(dir / "a.ppm"), img);
  std::filesystem::remove_all(dir);
}

TEST(MaskIo, JsonRoundTripKeepsOrder) {
  const BlockGrid grid = testing::make_grid(2, 3, 2, 1, [](auto r, auto c) {
    return (r == 0 && c < 2) ? 1 : 2;
  });
  CodecConfig cfg;
  cfg.predictor = Predictor::kSerpentine;
  cfg.block_size = 2;
  const RetainMask mask = compress(grid, cfg).mask;
  const std::string text = mask_to_json(mask, cfg);
  const auto j = nlohmann::json::parse(text);
  EXPECT_EQ(j["rows"], 2);
  EXPECT_EQ(j["cols"], 3);
  EXPECT_EQ(j["retained_count"], 2);
  EXPECT_EQ(j["positions"], nlohmann::json::parse("[[0,0],[0,2]]"));
  EXPECT_EQ(j["kept"], nlohmann::json::parse("[[1,0,1],[0,0,0]]"));
  EXPECT_EQ(j["config"]["predictor"], "serpentine");
  EXPECT_EQ(mask_from_json(text), mask);
  EXPECT_EQ(mask_to_csv(mask), "1,0,1\n0,0,0\n");
  EXPECT_FALSE(nlohmann::json::parse(mask_to_json(mask, std::nullopt)).contains("config"));
}

TEST(MaskIo, RejectsInconsistentFiles) {
  EXPECT_EQ(code_of([] { mask_from_json("{"); }), ErrorCode::kDecode);
  EXPECT_EQ(code_of([] {
              mask_from_json(R"({"rows":1,"cols":2,"positions":[[0,0],[0,0]]})");
            }),
            ErrorCode::kDecode);
  EXPECT_EQ(code_of([] {
              mask_from_json(R"({"rows":1,"cols":2,"positions":[[0,5]]})");
            }),
            ErrorCode::kDecode);
  EXPECT_EQ(code_of([] {
              mask_from_json(
                  R"({"rows":1,"cols":2,"positions":[[0,0]],"retained_count":2})");
            }),
            ErrorCode::kDecode);
  EXPECT_EQ(code_of([] {
              mask_from_json(
                  R"({"rows":1,"cols":2,"positions":[[0,0]],"kept":[[1,1]]})");
            }),
            ErrorCode::kDecode);
}

}  // namespace
}  // namespace blockprune
