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

#include "blockprune/image_io.h"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <system_error>

#include "blockprune/error.h"

namespace blockprune {

namespace {

constexpr std::uint8_t kPngSignature[8] = {0x89, 'P', 'N', 'G',
                                           0x0D, 0x0A, 0x1A, 0x0A};

bool is_png(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= 8 && std::equal(std::begin(kPngSignature),
                                         std::end(kPngSignature),
                                         bytes.begin());
}

PixelImage decode_png(std::span<const std::uint8_t> bytes) {
  png_image img;
  std::memset(&img, 0, sizeof(img));
  img.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&img, bytes.data(), bytes.size())) {
    throw Error(ErrorCode::kDecode, std::string("png: ") + img.message);
  }
  // Gray stays gray; everything else (palette, gray+alpha with color, RGBA)
  // is flattened to 8-bit RGB.
  const bool gray = (img.format & PNG_FORMAT_FLAG_COLOR) == 0;
  img.format = gray ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
  const std::uint32_t channels = gray ? 1 : 3;
  if (img.width == 0 || img.height == 0) {
    png_image_free(&img);
    throw Error(ErrorCode::kDecode, "png: zero-sized image");
  }
  std::vector<std::uint8_t> data(PNG_IMAGE_SIZE(img));
  if (!png_image_finish_read(&img, nullptr, data.data(), 0, nullptr)) {
    const std::string msg = img.message;
    png_image_free(&img);
    throw Error(ErrorCode::kDecode, "png: " + msg);
  }
  return PixelImage(img.width, img.height, channels, std::move(data));
}

class PnmParser {
 public:
  explicit PnmParser(std::span<const std::uint8_t> bytes) : in_(bytes) {}

  std::uint32_t number() {
    skip_space_and_comments();
    std::uint64_t v = 0;
    std::size_t digits = 0;
    while (pos_ < in_.size() && std::isdigit(in_[pos_])) {
      v = v * 10 + (in_[pos_++] - '0');
      if (v > 0xFFFFFFFFu) throw Error(ErrorCode::kDecode, "pnm: bad header");
      ++digits;
    }
    if (digits == 0) throw Error(ErrorCode::kDecode, "pnm: bad header");
    return static_cast<std::uint32_t>(v);
  }

  // Exactly one whitespace byte separates the header from the raster.
  std::span<const std::uint8_t> raster() {
    if (pos_ >= in_.size() || !std::isspace(in_[pos_])) {
      throw Error(ErrorCode::kDecode, "pnm: bad header terminator");
    }
    return in_.subspan(pos_ + 1);
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < in_.size()) {
      if (std::isspace(in_[pos_])) {
        ++pos_;
      } else if (in_[pos_] == '#') {
        while (pos_ < in_.size() && in_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 2;  // past the "P5"/"P6" magic
};

PixelImage decode_pnm(std::span<const std::uint8_t> bytes) {
  const std::uint32_t channels = bytes[1] == '5' ? 1 : 3;
  PnmParser parser(bytes);
  const std::uint32_t width = parser.number();
  const std::uint32_t height = parser.number();
  const std::uint32_t maxval = parser.number();
  if (maxval != 255) {
    throw Error(ErrorCode::kDecode, "pnm: only maxval 255 is supported");
  }
  if (width == 0 || height == 0) {
    throw Error(ErrorCode::kDecode, "pnm: zero-sized image");
  }
  const auto raster = parser.raster();
  const std::uint64_t expected = std::uint64_t{width} * height * channels;
  if (raster.size() < expected) {
    throw Error(ErrorCode::kDecode, "pnm: truncated raster");
  }
  return PixelImage(width, height, channels,
                    std::vector<std::uint8_t>(raster.begin(),
                                              raster.begin() + expected));
}

}  // namespace

PixelImage decode_image(std::span<const std::uint8_t> bytes) {
  if (is_png(bytes)) return decode_png(bytes);
  if (bytes.size() >= 2 && bytes[0] == 'P' &&
      (bytes[1] == '5' || bytes[1] == '6')) {
    return decode_pnm(bytes);
  }
  throw Error(ErrorCode::kDecode, "unrecognized image format (PNG/PGM/PPM)");
}

PixelImage read_image(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  try {
    return decode_image(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.message());
  }
}

std::vector<std::uint8_t> encode_png(const PixelImage& image) {
  png_image img;
  std::memset(&img, 0, sizeof(img));
  img.version = PNG_IMAGE_VERSION;
  img.width = image.width();
  img.height = image.height();
  img.format = image.channels() == 1 ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
  png_alloc_size_t size = 0;
  if (!png_image_write_get_memory_size(img, size, 0, image.data().data(), 0,
                                       nullptr)) {
    throw Error(ErrorCode::kIo, std::string("png encode: ") + img.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&img, out.data(), &size, 0,
                                 image.data().data(), 0, nullptr)) {
    throw Error(ErrorCode::kIo, std::string("png encode: ") + img.message);
  }
  out.resize(size);
  return out;
}

std::vector<std::uint8_t> encode_pnm(const PixelImage& image) {
  const std::string header = std::string(image.channels() == 1 ? "P5" : "P6") +
                             "\n" + std::to_string(image.width()) + " " +
                             std::to_string(image.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.data().begin(), image.data().end());
  return out;
}

void write_image(const std::filesystem::path& path, const PixelImage& image) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char ch) { return std::tolower(ch); });
  write_file_atomic(path, ext == ".png" ? encode_png(image) : encode_pnm(image));
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  return bytes;
}

void write_file_atomic(const std::filesystem::path& path,
                       std::span<const std::uint8_t> bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::kIo, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::kIo, "cannot rename into " + path.string());
  }
}

}  // namespace blockprune
