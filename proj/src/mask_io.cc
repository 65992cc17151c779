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

#include "blockprune/mask_io.h"

#include <string>

#include "json.hpp"

#include "blockprune/error.h"

namespace blockprune {

std::string mask_to_json(const RetainMask& mask,
                         const std::optional<CodecConfig>& config) {
  nlohmann::ordered_json j;
  j["rows"] = mask.rows();
  j["cols"] = mask.cols();
  j["retained_count"] = mask.retained_count();
  j["retain_ratio"] = mask.retain_ratio();
  auto positions = nlohmann::ordered_json::array();
  for (const GridPos& p : mask.positions()) {
    positions.push_back({p.row, p.col});
  }
  j["positions"] = std::move(positions);
  auto kept = nlohmann::ordered_json::array();
  for (std::uint32_t r = 0; r < mask.rows(); ++r) {
    auto row = nlohmann::ordered_json::array();
    for (std::uint32_t c = 0; c < mask.cols(); ++c) {
      row.push_back(mask.kept(r, c) ? 1 : 0);
    }
    kept.push_back(std::move(row));
  }
  j["kept"] = std::move(kept);
  if (config) {
    j["config"] = {{"predictor", to_string(config->predictor)},
                   {"metric", to_string(config->metric)},
                   {"tau", config->tau.value()},
                   {"block_size", config->block_size},
                   {"pad", to_string(config->pad_mode)}};
  }
  return j.dump(2) + "\n";
}

std::string mask_to_csv(const RetainMask& mask) {
  std::string out;
  for (std::uint32_t r = 0; r < mask.rows(); ++r) {
    for (std::uint32_t c = 0; c < mask.cols(); ++c) {
      if (c > 0) out += ',';
      out += mask.kept(r, c) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

RetainMask mask_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    const auto rows = j.at("rows").get<std::uint32_t>();
    const auto cols = j.at("cols").get<std::uint32_t>();
    RetainMask mask(rows, cols);
    for (const auto& p : j.at("positions")) {
      const GridPos pos{p.at(0).get<std::uint32_t>(),
                        p.at(1).get<std::uint32_t>()};
      if (mask.kept(pos)) {
        throw Error(ErrorCode::kDecode, "mask lists a position twice");
      }
      mask.keep(pos);
    }
    if (j.contains("retained_count") &&
        j.at("retained_count").get<std::size_t>() != mask.retained_count()) {
      throw Error(ErrorCode::kDecode, "retained_count disagrees with positions");
    }
    if (j.contains("kept")) {
      const auto& kept = j.at("kept");
      if (kept.size() != rows) {
        throw Error(ErrorCode::kDecode, "kept has the wrong row count");
      }
      for (std::uint32_t r = 0; r < rows; ++r) {
        if (kept[r].size() != cols) {
          throw Error(ErrorCode::kDecode, "kept has the wrong column count");
        }
        for (std::uint32_t c = 0; c < cols; ++c) {
          if ((kept[r][c].get<int>() != 0) != mask.kept(r, c)) {
            throw Error(ErrorCode::kDecode, "kept disagrees with positions");
          }
        }
      }
    }
    return mask;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kDecode, std::string("mask file: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kDecode) throw;
    throw Error(ErrorCode::kDecode, e.what());
  }
}

}  // namespace blockprune
