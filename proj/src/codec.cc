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

#include "blockprune/codec.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>

#include "blockprune/error.h"

namespace blockprune {

std::string_view to_string(Predictor predictor) {
  switch (predictor) {
    case Predictor::kRaster: return "raster";
    case Predictor::kSerpentine: return "serpentine";
    case Predictor::kPred2D: return "pred2d";
  }
  return "unknown";
}

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::kMae: return "mae";
    case Metric::kMax: return "max";
  }
  return "unknown";
}

std::string_view to_string(PadMode pad_mode) {
  switch (pad_mode) {
    case PadMode::kReject: return "reject";
    case PadMode::kEdgeReplicate: return "edge";
  }
  return "unknown";
}

Predictor parse_predictor(std::string_view name) {
  if (name == "raster") return Predictor::kRaster;
  if (name == "serpentine") return Predictor::kSerpentine;
  if (name == "pred2d") return Predictor::kPred2D;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown predictor '" + std::string(name) + "'");
}

Metric parse_metric(std::string_view name) {
  if (name == "mae") return Metric::kMae;
  if (name == "max") return Metric::kMax;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown metric '" + std::string(name) + "'");
}

PadMode parse_pad_mode(std::string_view name) {
  if (name == "reject") return PadMode::kReject;
  if (name == "edge") return PadMode::kEdgeReplicate;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown pad mode '" + std::string(name) + "'");
}

Tau Tau::from_units(std::uint32_t units) {
  if (units > kScale) {
    throw Error(ErrorCode::kInvalidArgument, "tau must lie in [0, 1]");
  }
  Tau t;
  t.units_ = units;
  return t;
}

Tau Tau::from_double(double value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tau must lie in [0, 1]");
  }
  return from_units(static_cast<std::uint32_t>(std::lround(value * kScale)));
}

void CodecConfig::validate() const {
  if (block_size == 0) {
    throw Error(ErrorCode::kInvalidArgument, "block_size must be positive");
  }
}

std::vector<GridPos> scan_order(Predictor predictor, std::uint32_t rows,
                                std::uint32_t cols) {
  std::vector<GridPos> order;
  order.reserve(static_cast<std::size_t>(rows) * cols);
  for (std::uint32_t r = 0; r < rows; ++r) {
    const bool reversed = predictor == Predictor::kSerpentine && (r % 2 == 1);
    for (std::uint32_t i = 0; i < cols; ++i) {
      order.push_back(GridPos{r, reversed ? cols - 1 - i : i});
    }
  }
  return order;
}

namespace {

bool same(const Block* a, const Block* b) { return a == b || *a == *b; }

}  // namespace

const Block& predict(Predictor predictor, const PredictionContext& ctx) {
  if (predictor != Predictor::kPred2D) {
    if (ctx.predecessor == nullptr) {
      throw Error(ErrorCode::kNoNeighborAvailable,
                  "1D predictor needs a scan predecessor");
    }
    return *ctx.predecessor;
  }
  const Block* a = ctx.left;
  const Block* b = ctx.upper;
  const Block* c = ctx.upper_left;
  if (a == nullptr && b == nullptr) {
    throw Error(ErrorCode::kNoNeighborAvailable,
                "Pred2D needs a left or upper neighbour");
  }
  if (a == nullptr) return *b;
  if (b == nullptr) return *a;
  if (c == nullptr) {
    throw Error(ErrorCode::kNoNeighborAvailable,
                "interior Pred2D position lacks its upper-left neighbour");
  }
  if (same(c, b) && !same(b, a)) return *a;
  if (same(c, a) && !same(a, b)) return *b;
  return *a;
}

double block_distance(const Block& a, const Block& b, Metric metric) {
  if (a.side() != b.side() || a.channels() != b.channels()) {
    throw Error(ErrorCode::kShapeMismatch, "blocks differ in shape");
  }
  const auto sa = a.samples();
  const auto sb = b.samples();
  if (sa.empty()) return 0.0;
  std::uint64_t sum = 0;
  int max_diff = 0;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    const int d = std::abs(int{sa[i]} - int{sb[i]});
    sum += static_cast<std::uint64_t>(d);
    max_diff = std::max(max_diff, d);
  }
  if (metric == Metric::kMax) return max_diff / 255.0;
  return static_cast<double>(sum) / (255.0 * static_cast<double>(sa.size()));
}

bool within_tau(const Block& a, const Block& b, Metric metric, Tau tau) {
  if (a.side() != b.side() || a.channels() != b.channels()) {
    throw Error(ErrorCode::kShapeMismatch, "blocks differ in shape");
  }
  if (tau.is_zero()) return a == b;
  const auto sa = a.samples();
  const auto sb = b.samples();
  // dist <= units / kScale  <=>  diff * kScale <= units * 255 (* n for MAE).
  if (metric == Metric::kMax) {
    const std::uint64_t limit = std::uint64_t{tau.units()} * 255;
    for (std::size_t i = 0; i < sa.size(); ++i) {
      const auto d = static_cast<std::uint64_t>(
          std::abs(int{sa[i]} - int{sb[i]}));
      if (d * Tau::kScale > limit) return false;
    }
    return true;
  }
  const std::uint64_t limit =
      std::uint64_t{tau.units()} * 255 * static_cast<std::uint64_t>(sa.size());
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    sum += static_cast<std::uint64_t>(std::abs(int{sa[i]} - int{sb[i]}));
  }
  return sum * Tau::kScale <= limit;
}

RetainMask::RetainMask(std::uint32_t rows, std::uint32_t cols)
    : rows_(rows), cols_(cols),
      kept_(static_cast<std::size_t>(rows) * cols, 0) {}

double RetainMask::retain_ratio() const {
  if (kept_.empty()) return 0.0;
  return static_cast<double>(positions_.size()) /
         static_cast<double>(kept_.size());
}

bool RetainMask::kept(GridPos p) const {
  if (p.row >= rows_ || p.col >= cols_) return false;
  return kept_[static_cast<std::size_t>(p.row) * cols_ + p.col] != 0;
}

void RetainMask::keep(GridPos p) {
  if (p.row >= rows_ || p.col >= cols_) {
    throw Error(ErrorCode::kInvalidArgument, "mask position out of range");
  }
  auto& flag = kept_[static_cast<std::size_t>(p.row) * cols_ + p.col];
  if (flag) return;
  flag = 1;
  positions_.push_back(p);
}

namespace {

// Walks the grid in scan order, maintaining the decoder-side state as one
// pointer per position. For each position `visit(pos, predicted)` returns the
// block that now occupies it; `predicted` is null only for the anchor.
template <typename Visit>
std::vector<const Block*> run_scan(Predictor predictor, std::uint32_t rows,
                                   std::uint32_t cols, Visit&& visit) {
  std::vector<const Block*> state(static_cast<std::size_t>(rows) * cols,
                                  nullptr);
  const auto order = scan_order(predictor, rows, cols);
  const auto at = [&](std::uint32_t r, std::uint32_t c) {
    return state[static_cast<std::size_t>(r) * cols + c];
  };
  for (std::size_t k = 0; k < order.size(); ++k) {
    const GridPos pos = order[k];
    const Block* predicted = nullptr;
    if (k > 0) {
      PredictionContext ctx;
      if (predictor == Predictor::kPred2D) {
        if (pos.col > 0) ctx.left = at(pos.row, pos.col - 1);
        if (pos.row > 0) ctx.upper = at(pos.row - 1, pos.col);
        if (pos.row > 0 && pos.col > 0) {
          ctx.upper_left = at(pos.row - 1, pos.col - 1);
        }
      } else {
        ctx.predecessor = at(order[k - 1].row, order[k - 1].col);
      }
      predicted = &predict(predictor, ctx);
    }
    state[static_cast<std::size_t>(pos.row) * cols + pos.col] =
        visit(pos, predicted);
  }
  return state;
}

BlockGrid materialize(const std::vector<const Block*>& state,
                      std::uint32_t rows, std::uint32_t cols,
                      std::uint32_t block_size, std::uint32_t channels) {
  std::vector<Block> blocks;
  blocks.reserve(state.size());
  for (const Block* b : state) blocks.push_back(*b);
  return BlockGrid(rows, cols, block_size, channels, std::move(blocks));
}

Encoding encode(const BlockGrid& grid, const CodecConfig& config,
                std::uint32_t width, std::uint32_t height, bool mask_only) {
  config.validate();
  if (grid.block_count() == 0) {
    throw Error(ErrorCode::kEmptyImage, "cannot compress an empty grid");
  }
  if (grid.block_size() != config.block_size) {
    throw Error(ErrorCode::kConfigMismatch,
                "grid block size differs from the codec config");
  }
  Encoding enc;
  enc.mask = RetainMask(grid.rows(), grid.cols());
  CompressedImage& comp = enc.compressed;
  comp.config = config;
  comp.rows = grid.rows();
  comp.cols = grid.cols();
  comp.channels = grid.channels();
  comp.width = width;
  comp.height = height;

  auto state = run_scan(
      config.predictor, grid.rows(), grid.cols(),
      [&](GridPos pos, const Block* predicted) -> const Block* {
        const Block& original = grid.at(pos);
        if (predicted != nullptr &&
            within_tau(original, *predicted, config.metric, config.tau)) {
          return predicted;
        }
        enc.mask.keep(pos);
        if (!mask_only) comp.entries.push_back({pos, original});
        return &original;
      });
  if (!mask_only) {
    enc.working_state = materialize(state, grid.rows(), grid.cols(),
                                    grid.block_size(), grid.channels());
  }
  return enc;
}

std::uint64_t scan_rank(Predictor predictor, std::uint32_t cols, GridPos p) {
  const std::uint64_t base = std::uint64_t{p.row} * cols;
  if (predictor == Predictor::kSerpentine && p.row % 2 == 1) {
    return base + (cols - 1 - p.col);
  }
  return base + p.col;
}

}  // namespace

Encoding compress(const BlockGrid& grid, const CodecConfig& config) {
  return encode(grid, config, grid.cols() * grid.block_size(),
                grid.rows() * grid.block_size(), /*mask_only=*/false);
}

Encoding compress(const PixelImage& image, const CodecConfig& config) {
  config.validate();
  const BlockGrid grid = partition(image, config.block_size, config.pad_mode);
  return encode(grid, config, image.width(), image.height(),
                /*mask_only=*/false);
}

void validate(const CompressedImage& comp) {
  comp.config.validate();
  const std::uint32_t bs = comp.config.block_size;
  if (comp.rows == 0 || comp.cols == 0) {
    throw Error(ErrorCode::kMalformedStream, "empty grid");
  }
  if (comp.channels != 1 && comp.channels != 3) {
    throw Error(ErrorCode::kMalformedStream, "channels must be 1 or 3");
  }
  if (comp.width == 0 || comp.height == 0 ||
      (std::uint64_t{comp.width} + bs - 1) / bs != comp.cols ||
      (std::uint64_t{comp.height} + bs - 1) / bs != comp.rows) {
    throw Error(ErrorCode::kConfigMismatch,
                "grid dims inconsistent with image dims and block size");
  }
  if (comp.entries.empty() || comp.entries.front().pos != GridPos{0, 0}) {
    throw Error(ErrorCode::kMalformedStream, "missing anchor block");
  }
  std::uint64_t prev_rank = 0;
  for (std::size_t i = 0; i < comp.entries.size(); ++i) {
    const CompressedEntry& e = comp.entries[i];
    if (e.pos.row >= comp.rows || e.pos.col >= comp.cols) {
      throw Error(ErrorCode::kMalformedStream,
                  "entry coordinate out of range");
    }
    const std::uint64_t rank = scan_rank(comp.config.predictor, comp.cols, e.pos);
    if (i > 0 && rank <= prev_rank) {
      throw Error(ErrorCode::kMalformedStream,
                  "entries not strictly increasing in scan order");
    }
    prev_rank = rank;
    if (e.block.side() != bs || e.block.channels() != comp.channels) {
      throw Error(ErrorCode::kConfigMismatch,
                  "entry block shape differs from the grid");
    }
  }
}

BlockGrid decompress(const CompressedImage& comp) {
  validate(comp);
  std::size_t next = 0;
  auto state = run_scan(
      comp.config.predictor, comp.rows, comp.cols,
      [&](GridPos pos, const Block* predicted) -> const Block* {
        if (next < comp.entries.size() && comp.entries[next].pos == pos) {
          return &comp.entries[next++].block;
        }
        return predicted;
      });
  return materialize(state, comp.rows, comp.cols, comp.config.block_size,
                     comp.channels);
}

PixelImage decompress_image(const CompressedImage& comp) {
  return assemble(decompress(comp), comp.width, comp.height);
}

RetainMask compute_retain_mask(const ImageView& image,
                               const CodecConfig& config) {
  config.validate();
  const BlockGrid grid = partition(image, config.block_size, config.pad_mode);
  return std::move(encode(grid, config, image.width, image.height,
                          /*mask_only=*/true)
                       .mask);
}

}  // namespace blockprune
