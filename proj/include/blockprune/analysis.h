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

#ifndef BLOCKPRUNE_ANALYSIS_H_
#define BLOCKPRUNE_ANALYSIS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "blockprune/block_grid.h"
#include "blockprune/codec.h"
#include "blockprune/image.h"

namespace blockprune {

// For every block (row-major), how many blocks in the grid share its exact
// content.
std::vector<std::size_t> block_multiplicities(const BlockGrid& grid);

// Number of blocks whose content occurs exactly once in the grid.
std::size_t unique_block_count(const BlockGrid& grid);

struct ImageStats {
  std::string image_id;
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::size_t total_blocks = 0;     // N_i
  std::size_t unique_blocks = 0;    // U_i
  std::size_t retained_blocks = 0;  // |S_i|
};

// Sum-based ratios over a corpus. Both throw Error(kEmptyCorpus) for an empty
// list (or a corpus with no blocks).
double dataset_retain_ratio(std::span<const ImageStats> stats);
double duplicate_ratio(std::span<const ImageStats> stats);

ImageStats analyze_image(std::string image_id, const PixelImage& image,
                         const CodecConfig& config);

struct CorpusEntry {
  std::string id;
  std::function<PixelImage()> load;
};

struct CorpusFailure {
  std::string id;
  std::string message;
};

struct CorpusReport {
  CodecConfig config;
  std::vector<ImageStats> images;  // ingestion order
  std::vector<CorpusFailure> failures;
  double dataset_retain_ratio = 0.0;
  double duplicate_ratio = 0.0;
  double mean_width = 0.0;
  double mean_height = 0.0;
};

// Images with a .png/.ppm/.pgm extension directly inside `dir`, sorted by
// path. Throws Error(kIo) if `dir` is not a readable directory.
std::vector<CorpusEntry> corpus_from_directory(const std::filesystem::path& dir);

// Analyzes every entry, recording per-image load/codec failures instead of
// aborting. Work is spread over `threads` workers (0 = hardware concurrency);
// results keep ingestion order. Throws Error(kAllImagesFailed) if nothing
// succeeds (including an empty source).
CorpusReport analyze_corpus(std::span<const CorpusEntry> source,
                            const CodecConfig& config, unsigned threads = 0);

// Report schema:
//   { config, corpus: {n_images, n_failed, dataset_retain_ratio,
//     duplicate_ratio, mean_width, mean_height}, images: [{id, width, height,
//     N, U, S}] }
std::string report_to_json(const CorpusReport& report);
// Columns: id,width,height,N,U,S,retain_ratio,duplicate_ratio.
std::string report_to_csv(const CorpusReport& report);

}  // namespace blockprune

#endif  // BLOCKPRUNE_ANALYSIS_H_
