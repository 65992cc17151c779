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

#ifndef BLOCKPRUNE_COST_MODEL_H_
#define BLOCKPRUNE_COST_MODEL_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace blockprune {

// Operation counts are exact 128-bit integers.
using Flops = unsigned __int128;

std::string flops_to_string(Flops v);
// v / 1e12 rounded half-up to 3 decimals, e.g. "7.881".
std::string flops_to_tflops(Flops v);

// Architecture of a three-stage ViT -> patch merger -> LLM pipeline.
struct FlopsArch {
  std::string name;
  // ViT encoder.
  std::uint64_t vit_layers = 0;   // L_v
  std::uint64_t vit_hidden = 0;   // D_v
  std::uint64_t vit_ffn = 0;      // D_{f,v}
  // Patch merger.
  std::uint64_t merge_factor = 0;      // M (M x M tokens merged)
  std::uint64_t deepstack_layers = 0;  // |I_ds|
  // LLM decoder.
  std::uint64_t llm_layers = 0;   // L_l
  std::uint64_t llm_hidden = 0;   // D_l
  std::uint64_t llm_ffn = 0;      // D_{f,l}
  std::uint64_t query_heads = 0;  // n_q
  std::uint64_t kv_heads = 0;     // n_kv

  std::uint64_t merger_count() const { return 1 + deepstack_layers; }
  std::uint64_t merger_input_dim() const {
    return merge_factor * merge_factor * vit_hidden;
  }
  std::uint64_t head_dim() const { return llm_hidden / query_heads; }
  std::uint64_t merge_group() const { return merge_factor * merge_factor; }

  // Throws Error(kInvalidArgument) on zero counts or when query_heads does
  // not divide llm_hidden. FFN widths may be zero.
  void validate() const;
};

// Qwen3-VL-2B.
FlopsArch qwen3vl_2b_arch();

// JSON object with keys name (optional), vit_layers, vit_hidden, vit_ffn,
// merge_factor, deepstack_layers, llm_layers, llm_hidden, llm_ffn,
// query_heads, kv_heads and optionally head_dim (checked against
// llm_hidden / query_heads). Throws Error(kInvalidArgument / kDecode).
FlopsArch parse_arch_json(std::string_view text);
FlopsArch load_arch_file(const std::filesystem::path& path);

struct FlopsReport {
  std::uint64_t vit_tokens = 0;  // N, per page
  std::uint64_t text_tokens = 0; // T
  std::uint64_t pages = 1;
  std::uint64_t llm_seq_len = 0; // N_l = pages * N / M^2 + T
  Flops vit = 0;
  Flops merger = 0;
  Flops llm = 0;
  Flops total = 0;
};

// FLOPs of one forward pass over `pages` images of `vit_tokens` patches each
// plus `text_tokens` text tokens:
//   vit    = P * L_v [N (8 D_v^2 + 4 D_v D_fv) + 4 N^2 D_v]
//   merger = P * L_m (N / M^2) (2 D_in^2 + 2 D_in D_l)
//   llm    = L_l [N_l C_l + 4 N_l^2 D_l],  N_l = P N / M^2 + T
//   C_l    = 2 D_l (2 n_q + 2 n_kv) d_h + 6 D_l D_fl
// ViT attention is per image; the LLM sees all pages in one sequence.
//
// Throws Error(kNotMergeDivisible) if N is not a multiple of M^2 and
// Error(kOverflow) if a count exceeds 128 bits.
FlopsReport flops_total(const FlopsArch& arch, std::uint64_t vit_tokens,
                        std::uint64_t text_tokens, std::uint64_t pages = 1);

struct SavingsReport {
  FlopsReport full;
  FlopsReport pruned;
  double speedup = 0.0;  // full.total / pruned.total
};

// Throws Error(kInvalidArgument) if retained_tokens > vit_tokens.
SavingsReport savings_report(const FlopsArch& arch, std::uint64_t vit_tokens,
                             std::uint64_t retained_tokens,
                             std::uint64_t text_tokens,
                             std::uint64_t pages = 1);

// ViT patch count of a width x height image cut into merge_factor^2 patches
// per block: (H'/p) (W'/p) with p = block_size / M and H', W' rounded up to
// block multiples. Throws Error(kInvalidArgument) if M does not divide
// block_size.
std::uint64_t vit_tokens_for_image(const FlopsArch& arch, std::uint32_t width,
                                   std::uint32_t height,
                                   std::uint32_t block_size);

// Retained blocks -> retained ViT patches (each block is M^2 patches).
std::uint64_t vit_tokens_for_blocks(const FlopsArch& arch,
                                    std::uint64_t blocks);

}  // namespace blockprune

#endif  // BLOCKPRUNE_COST_MODEL_H_
