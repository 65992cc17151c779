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

#ifndef BLOCKPRUNE_TESTS_ORACLE_FLOOD_FILL_H_
#define BLOCKPRUNE_TESTS_ORACLE_FLOOD_FILL_H_

// Recursive 4-neighbour flood fill over equal-content blocks. Returns a
// component id per block (row-major); ids follow raster order of each
// component's first block. Only for small test grids.

#include <functional>
#include <vector>

#include "blockprune/block_grid.h"

namespace blockprune::oracle {

inline std::vector<int> flood_fill_components(const BlockGrid& grid) {
  const int rows = static_cast<int>(grid.rows());
  const int cols = static_cast<int>(grid.cols());
  std::vector<int> id(static_cast<std::size_t>(rows) * cols, -1);
  std::function<void(int, int, int)> fill = [&](int r, int c, int label) {
    id[static_cast<std::size_t>(r) * cols + c] = label;
    const int dr[] = {-1, 1, 0, 0};
    const int dc[] = {0, 0, -1, 1};
    for (int k = 0; k < 4; ++k) {
      const int nr = r + dr[k];
      const int nc = c + dc[k];
      if (nr < 0 || nc < 0 || nr >= rows || nc >= cols) continue;
      if (id[static_cast<std::size_t>(nr) * cols + nc] != -1) continue;
      if (!(grid.at(nr, nc) == grid.at(r, c))) continue;
      fill(nr, nc, label);
    }
  };
  int next = 0;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (id[static_cast<std::size_t>(r) * cols + c] == -1) fill(r, c, next++);
    }
  }
  return id;
}

}  // namespace blockprune::oracle

#endif  // BLOCKPRUNE_TESTS_ORACLE_FLOOD_FILL_H_
