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

#ifndef BLOCKPRUNE_TOOLS_COMMANDS_H_
#define BLOCKPRUNE_TOOLS_COMMANDS_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "blockprune/image.h"

namespace blockprune::cli {

// Runs one invocation of the command-line tool. `args` excludes the program
// name. Normal output goes to `out`, diagnostics to `err`. Returns the
// process exit status.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// Gray blend applied to omitted blocks by `visualize`: 60% of mid-gray (128)
// plus 40% of the original sample, rounded to nearest.
inline std::uint8_t gray_out(std::uint8_t v) {
  return static_cast<std::uint8_t>((6 * 128 + 4 * unsigned{v} + 5) / 10);
}

}  // namespace blockprune::cli

#endif  // BLOCKPRUNE_TOOLS_COMMANDS_H_
