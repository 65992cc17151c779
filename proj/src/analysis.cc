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

#include "blockprune/analysis.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <optional>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <utility>

#include "json.hpp"

#include "blockprune/error.h"
#include "blockprune/image_io.h"

namespace blockprune {

namespace {

// FNV-1a over the block samples.
std::uint64_t content_hash(const Block& block) {
  std::uint64_t h = 1469598103934665603ull;
  for (std::uint8_t v : block.samples()) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

std::vector<std::size_t> block_multiplicities(const BlockGrid& grid) {
  const auto blocks = grid.blocks();
  // Each hash bucket holds (representative index, occurrence count) classes,
  // so colliding but different contents stay apart.
  struct ContentClass {
    std::size_t representative;
    std::size_t count;
  };
  std::unordered_map<std::uint64_t, std::vector<ContentClass>> buckets;
  std::vector<std::pair<std::uint64_t, std::size_t>> membership(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const std::uint64_t h = content_hash(blocks[i]);
    auto& classes = buckets[h];
    auto it = std::find_if(classes.begin(), classes.end(),
                           [&](const ContentClass& cls) {
                             return blocks[cls.representative] == blocks[i];
                           });
    if (it == classes.end()) {
      classes.push_back({i, 1});
      membership[i] = {h, classes.size() - 1};
    } else {
      ++it->count;
      membership[i] = {h, static_cast<std::size_t>(it - classes.begin())};
    }
  }
  std::vector<std::size_t> counts(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    counts[i] = buckets[membership[i].first][membership[i].second].count;
  }
  return counts;
}

std::size_t unique_block_count(const BlockGrid& grid) {
  const auto counts = block_multiplicities(grid);
  return static_cast<std::size_t>(
      std::count(counts.begin(), counts.end(), std::size_t{1}));
}

namespace {

struct Totals {
  std::size_t total = 0;
  std::size_t unique = 0;
  std::size_t retained = 0;
};

Totals sum_stats(std::span<const ImageStats> stats) {
  if (stats.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "no images to aggregate");
  }
  Totals t;
  for (const ImageStats& s : stats) {
    t.total += s.total_blocks;
    t.unique += s.unique_blocks;
    t.retained += s.retained_blocks;
  }
  if (t.total == 0) {
    throw Error(ErrorCode::kEmptyCorpus, "corpus holds no blocks");
  }
  return t;
}

}  // namespace

double dataset_retain_ratio(std::span<const ImageStats> stats) {
  const Totals t = sum_stats(stats);
  return static_cast<double>(t.retained) / static_cast<double>(t.total);
}

double duplicate_ratio(std::span<const ImageStats> stats) {
  const Totals t = sum_stats(stats);
  return 1.0 - static_cast<double>(t.unique) / static_cast<double>(t.total);
}

ImageStats analyze_image(std::string image_id, const PixelImage& image,
                         const CodecConfig& config) {
  config.validate();
  const BlockGrid grid = partition(image, config.block_size, config.pad_mode);
  const Encoding enc = compress(grid, config);
  ImageStats s;
  s.image_id = std::move(image_id);
  s.width = image.width();
  s.height = image.height();
  s.total_blocks = grid.block_count();
  s.unique_blocks = unique_block_count(grid);
  s.retained_blocks = enc.mask.retained_count();
  return s;
}

std::vector<CorpusEntry> corpus_from_directory(
    const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw Error(ErrorCode::kIo, "not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char ch) { return std::tolower(ch); });
    if (ext == ".png" || ext == ".ppm" || ext == ".pgm") {
      paths.push_back(entry.path());
    }
  }
  if (ec) throw Error(ErrorCode::kIo, "cannot list " + dir.string());
  std::sort(paths.begin(), paths.end());

  std::vector<CorpusEntry> entries;
  entries.reserve(paths.size());
  for (const auto& p : paths) {
    entries.push_back({p.filename().string(), [p] { return read_image(p); }});
  }
  return entries;
}

CorpusReport analyze_corpus(std::span<const CorpusEntry> source,
                            const CodecConfig& config, unsigned threads) {
  config.validate();
  struct Slot {
    std::optional<ImageStats> stats;
    std::string error;
  };
  std::vector<Slot> slots(source.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < source.size(); i = next++) {
      try {
        slots[i].stats = analyze_image(source[i].id, source[i].load(), config);
      } catch (const std::exception& e) {
        slots[i].error = e.what();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(1, source.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  CorpusReport report;
  report.config = config;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].stats) {
      report.images.push_back(std::move(*slots[i].stats));
    } else {
      report.failures.push_back({source[i].id, std::move(slots[i].error)});
    }
  }
  if (report.images.empty()) {
    throw Error(ErrorCode::kAllImagesFailed,
                source.empty() ? std::string("corpus is empty")
                               : std::to_string(source.size()) +
                                     " image(s) failed, none succeeded");
  }
  report.dataset_retain_ratio = dataset_retain_ratio(report.images);
  report.duplicate_ratio = duplicate_ratio(report.images);
  double w = 0.0;
  double h = 0.0;
  for (const ImageStats& s : report.images) {
    w += s.width;
    h += s.height;
  }
  report.mean_width = w / static_cast<double>(report.images.size());
  report.mean_height = h / static_cast<double>(report.images.size());
  return report;
}

namespace {

nlohmann::ordered_json config_json(const CodecConfig& config) {
  nlohmann::ordered_json j;
  j["predictor"] = to_string(config.predictor);
  j["metric"] = to_string(config.metric);
  j["tau"] = config.tau.value();
  j["block_size"] = config.block_size;
  j["pad"] = to_string(config.pad_mode);
  return j;
}

std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

// RFC 4180 quoting, only when needed.
std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(s);
  }
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

}  // namespace

std::string report_to_json(const CorpusReport& report) {
  nlohmann::ordered_json j;
  j["config"] = config_json(report.config);
  auto& corpus = j["corpus"];
  corpus["n_images"] = report.images.size();
  corpus["n_failed"] = report.failures.size();
  corpus["dataset_retain_ratio"] = report.dataset_retain_ratio;
  corpus["duplicate_ratio"] = report.duplicate_ratio;
  corpus["mean_width"] = report.mean_width;
  corpus["mean_height"] = report.mean_height;
  auto images = nlohmann::ordered_json::array();
  for (const ImageStats& s : report.images) {
    nlohmann::ordered_json row;
    row["id"] = s.image_id;
    row["width"] = s.width;
    row["height"] = s.height;
    row["N"] = s.total_blocks;
    row["U"] = s.unique_blocks;
    row["S"] = s.retained_blocks;
    images.push_back(std::move(row));
  }
  j["images"] = std::move(images);
  if (!report.failures.empty()) {
    auto failed = nlohmann::ordered_json::array();
    for (const CorpusFailure& f : report.failures) {
      failed.push_back({{"id", f.id}, {"error", f.message}});
    }
    j["failed"] = std::move(failed);
  }
  return j.dump(2) + "\n";
}

std::string report_to_csv(const CorpusReport& report) {
  std::string out = "id,width,height,N,U,S,retain_ratio,duplicate_ratio\n";
  for (const ImageStats& s : report.images) {
    const double n = static_cast<double>(s.total_blocks);
    out += csv_field(s.image_id) + "," + std::to_string(s.width) + "," +
           std::to_string(s.height) + "," + std::to_string(s.total_blocks) +
           "," + std::to_string(s.unique_blocks) + "," +
           std::to_string(s.retained_blocks) + "," +
           fixed6(static_cast<double>(s.retained_blocks) / n) + "," +
           fixed6(1.0 - static_cast<double>(s.unique_blocks) / n) + "\n";
  }
  return out;
}

}  // namespace blockprune
