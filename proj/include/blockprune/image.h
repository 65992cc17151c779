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

#ifndef BLOCKPRUNE_IMAGE_H_
#define BLOCKPRUNE_IMAGE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace blockprune {

// Non-owning view of a contiguous row-major, channel-interleaved 8-bit
// buffer. `data` must hold width * height * channels samples.
struct ImageView {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint32_t channels = 0;
  std::span<const std::uint8_t> data;

  std::size_t index(std::uint32_t x, std::uint32_t y, std::uint32_t c) const {
    return (static_cast<std::size_t>(y) * width + x) * channels + c;
  }
  // Throws like the PixelImage constructor on inconsistent shapes.
  void validate() const;
};

// Row-major, channel-interleaved 8-bit image with 1 (gray) or 3 (RGB)
// channels.
class PixelImage {
 public:
  PixelImage() = default;
  // Zero-filled image. Throws Error(kInvalidArgument) for bad channel counts
  // and Error(kEmptyImage) for zero dimensions.
  PixelImage(std::uint32_t width, std::uint32_t height, std::uint32_t channels);
  // Takes ownership of `data`, whose length must be width*height*channels.
  PixelImage(std::uint32_t width, std::uint32_t height, std::uint32_t channels,
             std::vector<std::uint8_t> data);

  std::uint32_t width() const { return width_; }
  std::uint32_t height() const { return height_; }
  std::uint32_t channels() const { return channels_; }
  bool empty() const { return data_.empty(); }

  std::span<const std::uint8_t> data() const { return data_; }
  std::span<std::uint8_t> mutable_data() { return data_; }
  ImageView view() const { return {width_, height_, channels_, data_}; }

  std::size_t index(std::uint32_t x, std::uint32_t y, std::uint32_t c) const {
    return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
  }
  std::uint8_t at(std::uint32_t x, std::uint32_t y, std::uint32_t c) const {
    return data_[index(x, y, c)];
  }
  std::uint8_t& at(std::uint32_t x, std::uint32_t y, std::uint32_t c) {
    return data_[index(x, y, c)];
  }

  bool operator==(const PixelImage&) const = default;

 private:
  std::uint32_t width_ = 0;
  std::uint32_t height_ = 0;
  std::uint32_t channels_ = 0;
  std::vector<std::uint8_t> data_;
};

}  // namespace blockprune

#endif  // BLOCKPRUNE_IMAGE_H_
