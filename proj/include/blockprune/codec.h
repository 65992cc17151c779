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

#ifndef BLOCKPRUNE_CODEC_H_
#define BLOCKPRUNE_CODEC_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "blockprune/block_grid.h"
#include "blockprune/image.h"

namespace blockprune {

enum class Predictor : std::uint8_t {
  kRaster = 0,
  kSerpentine = 1,
  kPred2D = 2,
};

enum class Metric : std::uint8_t {
  kMae = 0,
  kMax = 1,
};

std::string_view to_string(Predictor predictor);
std::string_view to_string(Metric metric);
std::string_view to_string(PadMode pad_mode);
// Accept the CLI spellings ("raster", "serpentine", "pred2d"; "mae", "max";
// "reject", "edge"). Throw Error(kInvalidArgument) otherwise.
Predictor parse_predictor(std::string_view name);
Metric parse_metric(std::string_view name);
PadMode parse_pad_mode(std::string_view name);

// Omission threshold in [0, 1], held in integer units of 1e-4 so it has the
// same value on both sides of the container.
class Tau {
 public:
  static constexpr std::uint32_t kScale = 10000;

  constexpr Tau() = default;
  static Tau from_units(std::uint32_t units);
  // Rounds to the nearest 1e-4. Throws Error(kInvalidArgument) outside [0, 1].
  static Tau from_double(double value);

  constexpr std::uint32_t units() const { return units_; }
  constexpr bool is_zero() const { return units_ == 0; }
  double value() const { return static_cast<double>(units_) / kScale; }

  constexpr auto operator<=>(const Tau&) const = default;

 private:
  std::uint32_t units_ = 0;
};

struct CodecConfig {
  Predictor predictor = Predictor::kPred2D;
  Metric metric = Metric::kMax;
  Tau tau;
  std::uint32_t block_size = 32;
  PadMode pad_mode = PadMode::kReject;

  // Throws Error(kInvalidArgument) if block_size == 0.
  void validate() const;

  bool operator==(const CodecConfig&) const = default;
};

// Visiting order of the grid. Raster and Pred2D are row-major; Serpentine
// runs left-to-right on even rows and right-to-left on odd rows.
std::vector<GridPos> scan_order(Predictor predictor, std::uint32_t rows,
                                std::uint32_t cols);

// Causal neighbours of the block being predicted, taken from the decoder-side
// state. Absent neighbours are null.
struct PredictionContext {
  const Block* left = nullptr;         // A
  const Block* upper = nullptr;        // B
  const Block* upper_left = nullptr;   // C
  const Block* predecessor = nullptr;  // previous block in a 1D scan
};

// Returns the neighbour that serves as the prediction. Raster/Serpentine use
// the scan predecessor. Pred2D picks the upper block when left and
// upper-left agree but upper differs, and the left block otherwise; on the
// first row it uses left, on the first column upper. Agreement is exact
// samplewise equality whatever tau is.
//
// Throws Error(kNoNeighborAvailable) when the required neighbour is missing.
const Block& predict(Predictor predictor, const PredictionContext& ctx);

// Normalized distance in [0, 1]: mean (kMae) or max (kMax) of |a - b| / 255
// over all samples and channels. Throws Error(kShapeMismatch).
double block_distance(const Block& a, const Block& b, Metric metric);

// The omission test dist(a, b) <= tau, evaluated in integer arithmetic.
// tau == 0 is plain equality.
bool within_tau(const Block& a, const Block& b, Metric metric, Tau tau);

// Keep/omit decision per block. Positions are remembered in the order they
// were kept (scan order for codec masks).
class RetainMask {
 public:
  RetainMask() = default;
  RetainMask(std::uint32_t rows, std::uint32_t cols);

  std::uint32_t rows() const { return rows_; }
  std::uint32_t cols() const { return cols_; }
  std::size_t total() const { return kept_.size(); }
  std::size_t retained_count() const { return positions_.size(); }
  double retain_ratio() const;

  bool kept(GridPos p) const;
  bool kept(std::uint32_t row, std::uint32_t col) const {
    return kept(GridPos{row, col});
  }
  // No-op if already kept. Throws Error(kInvalidArgument) when out of range.
  void keep(GridPos p);

  std::span<const GridPos> positions() const { return positions_; }
  // Row-major 0/1 flags.
  std::span<const std::uint8_t> flags() const { return kept_; }

  bool operator==(const RetainMask&) const = default;

 private:
  std::uint32_t rows_ = 0;
  std::uint32_t cols_ = 0;
  std::vector<std::uint8_t> kept_;
  std::vector<GridPos> positions_;
};

struct CompressedEntry {
  GridPos pos;
  Block block;

  bool operator==(const CompressedEntry&) const = default;
};

// Retained blocks with their grid coordinates, in scan order. `width` and
// `height` are the pre-padding image dimensions.
struct CompressedImage {
  CodecConfig config;
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::uint32_t channels = 0;
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<CompressedEntry> entries;

  std::size_t retained_count() const { return entries.size(); }
  bool operator==(const CompressedImage&) const = default;
};

// Checks the structural invariants decompress relies on: anchor first,
// strictly increasing scan order, coordinates in range (kMalformedStream);
// block shapes and dims consistent with the grid (kConfigMismatch).
void validate(const CompressedImage& comp);

struct Encoding {
  CompressedImage compressed;
  RetainMask mask;
  // Encoder-side state after the scan: originals at retained positions,
  // predictions at omitted ones. Identical to decompress(compressed).
  BlockGrid working_state;
};

Encoding compress(const BlockGrid& grid, const CodecConfig& config);
// Records the image's own dimensions so decompress_image can crop padding.
Encoding compress(const PixelImage& image, const CodecConfig& config);

BlockGrid decompress(const CompressedImage& comp);
PixelImage decompress_image(const CompressedImage& comp);

// partition + compress, keeping only the mask.
RetainMask compute_retain_mask(const ImageView& image,
                               const CodecConfig& config);
inline RetainMask compute_retain_mask(const PixelImage& image,
                                      const CodecConfig& config) {
  return compute_retain_mask(image.view(), config);
}

}  // namespace blockprune

#endif  // BLOCKPRUNE_CODEC_H_
