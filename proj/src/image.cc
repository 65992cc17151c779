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

#include "blockprune/image.h"

#include <string>
#include <utility>

#include "blockprune/error.h"

namespace blockprune {

namespace {

void check_shape(std::uint32_t width, std::uint32_t height,
                 std::uint32_t channels) {
  if (channels != 1 && channels != 3) {
    throw Error(ErrorCode::kInvalidArgument,
                "channels must be 1 or 3, got " + std::to_string(channels));
  }
  if (width == 0 || height == 0) {
    throw Error(ErrorCode::kEmptyImage, "image has a zero dimension");
  }
}

}  // namespace

void ImageView::validate() const {
  check_shape(width, height, channels);
  const std::size_t expected =
      static_cast<std::size_t>(width) * height * channels;
  if (data.size() != expected) {
    throw Error(ErrorCode::kInvalidArgument,
                "pixel buffer holds " + std::to_string(data.size()) +
                    " samples, expected " + std::to_string(expected));
  }
}

PixelImage::PixelImage(std::uint32_t width, std::uint32_t height,
                       std::uint32_t channels)
    : width_(width), height_(height), channels_(channels) {
  check_shape(width, height, channels);
  data_.assign(static_cast<std::size_t>(width) * height * channels, 0);
}

PixelImage::PixelImage(std::uint32_t width, std::uint32_t height,
                       std::uint32_t channels, std::vector<std::uint8_t> data)
    : width_(width), height_(height), channels_(channels),
      data_(std::move(data)) {
  view().validate();
}

}  // namespace blockprune
