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

#include <algorithm>
#include <iterator>
#include <limits>
#include <string>

#include "blockprune/error.h"

namespace blockprune {

namespace {

constexpr std::uint8_t kMagic[4] = {'P', 'X', 'P', 'R'};

class Writer {
 public:
  explicit Writer(std::vector<std::uint8_t>& out) : out_(out) {}

  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) {
    out_.push_back(static_cast<std::uint8_t>(v));
    out_.push_back(static_cast<std::uint8_t>(v >> 8));
  }
  void u32(std::uint32_t v) {
    for (int shift = 0; shift < 32; shift += 8) {
      out_.push_back(static_cast<std::uint8_t>(v >> shift));
    }
  }
  void bytes(std::span<const std::uint8_t> b) {
    out_.insert(out_.end(), b.begin(), b.end());
  }

 private:
  std::vector<std::uint8_t>& out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint8_t u8() { return take(1)[0]; }
  std::uint16_t u16() {
    const auto b = take(2);
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
  }
  std::uint32_t u32() {
    const auto b = take(4);
    return std::uint32_t{b[0]} | (std::uint32_t{b[1]} << 8) |
           (std::uint32_t{b[2]} << 16) | (std::uint32_t{b[3]} << 24);
  }
  std::span<const std::uint8_t> take(std::size_t n) {
    if (in_.size() - pos_ < n) {
      throw Error(ErrorCode::kTruncated,
                  "container ends at byte " + std::to_string(in_.size()) +
                      ", needed " + std::to_string(pos_ + n));
    }
    const auto out = in_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

std::uint16_t narrow16(std::uint32_t v, const char* field) {
  if (v > std::numeric_limits<std::uint16_t>::max()) {
    throw Error(ErrorCode::kOverflow,
                std::string(field) + " does not fit the container's u16 field");
  }
  return static_cast<std::uint16_t>(v);
}

}  // namespace

std::vector<std::uint8_t> serialize(const CompressedImage& comp) {
  validate(comp);
  const std::uint32_t bs = comp.config.block_size;
  const std::size_t block_bytes =
      static_cast<std::size_t>(bs) * bs * comp.channels;

  std::vector<std::uint8_t> out;
  out.reserve(kContainerHeaderSize + comp.entries.size() * (4 + block_bytes));
  Writer w(out);
  w.bytes(kMagic);
  w.u8(kContainerVersion);
  w.u8(static_cast<std::uint8_t>(comp.config.predictor));
  w.u8(static_cast<std::uint8_t>(comp.config.metric));
  w.u16(static_cast<std::uint16_t>(comp.config.tau.units()));
  w.u16(narrow16(bs, "block_size"));
  w.u8(static_cast<std::uint8_t>(comp.channels));
  w.u32(comp.width);
  w.u32(comp.height);
  w.u16(narrow16(comp.rows, "grid rows"));
  w.u16(narrow16(comp.cols, "grid cols"));
  w.u32(static_cast<std::uint32_t>(comp.entries.size()));
  for (const CompressedEntry& e : comp.entries) {
    w.u16(static_cast<std::uint16_t>(e.pos.row));
    w.u16(static_cast<std::uint16_t>(e.pos.col));
    w.bytes(e.block.samples());
  }
  return out;
}

CompressedImage deserialize(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  const auto magic = r.take(4);
  if (!std::equal(magic.begin(), magic.end(), std::begin(kMagic))) {
    throw Error(ErrorCode::kBadMagic, "not a PXPR container");
  }
  const std::uint8_t version = r.u8();
  if (version != kContainerVersion) {
    throw Error(ErrorCode::kUnsupportedVersion,
                "container version " + std::to_string(version) +
                    " (supported: " + std::to_string(kContainerVersion) + ")");
  }

  CompressedImage comp;
  const std::uint8_t predictor = r.u8();
  if (predictor > static_cast<std::uint8_t>(Predictor::kPred2D)) {
    throw Error(ErrorCode::kMalformedStream, "unknown predictor id");
  }
  comp.config.predictor = static_cast<Predictor>(predictor);
  const std::uint8_t metric = r.u8();
  if (metric > static_cast<std::uint8_t>(Metric::kMax)) {
    throw Error(ErrorCode::kMalformedStream, "unknown metric id");
  }
  comp.config.metric = static_cast<Metric>(metric);
  const std::uint16_t tau_units = r.u16();
  if (tau_units > Tau::kScale) {
    throw Error(ErrorCode::kMalformedStream, "tau exceeds 1");
  }
  comp.config.tau = Tau::from_units(tau_units);
  comp.config.block_size = r.u16();
  if (comp.config.block_size == 0) {
    throw Error(ErrorCode::kMalformedStream, "zero block size");
  }
  comp.channels = r.u8();
  if (comp.channels != 1 && comp.channels != 3) {
    throw Error(ErrorCode::kMalformedStream, "channels must be 1 or 3");
  }
  comp.width = r.u32();
  comp.height = r.u32();
  comp.rows = r.u16();
  comp.cols = r.u16();
  const std::uint32_t count = r.u32();
  if (count == 0 || std::uint64_t{count} > std::uint64_t{comp.rows} * comp.cols) {
    throw Error(ErrorCode::kMalformedStream, "retained count out of range");
  }
  const std::uint32_t bs = comp.config.block_size;
  comp.config.pad_mode = (comp.width % bs != 0 || comp.height % bs != 0)
                             ? PadMode::kEdgeReplicate
                             : PadMode::kReject;

  const std::size_t block_bytes =
      static_cast<std::size_t>(bs) * bs * comp.channels;
  // Reject impossible counts before allocating for them.
  if (r.remaining() / (4 + block_bytes) < count) {
    throw Error(ErrorCode::kTruncated, "payload shorter than retained_count");
  }
  comp.entries.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    CompressedEntry e;
    e.pos.row = r.u16();
    e.pos.col = r.u16();
    const auto samples = r.take(block_bytes);
    e.block = Block(bs, comp.channels,
                    std::vector<std::uint8_t>(samples.begin(), samples.end()));
    comp.entries.push_back(std::move(e));
  }
  if (r.remaining() != 0) {
    throw Error(ErrorCode::kMalformedStream, "trailing bytes after payload");
  }
  validate(comp);
  return comp;
}

}  // namespace blockprune
