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

#include "blockprune/cost_model.h"

#include <algorithm>
#include <string>

#include "json.hpp"

#include "blockprune/error.h"
#include "blockprune/image_io.h"

namespace blockprune {

namespace {

Flops mul(Flops a, Flops b) {
  Flops out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw Error(ErrorCode::kOverflow, "FLOPs count exceeds 128 bits");
  }
  return out;
}

Flops add(Flops a, Flops b) {
  Flops out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error(ErrorCode::kOverflow, "FLOPs count exceeds 128 bits");
  }
  return out;
}

template <typename... Rest>
Flops mul(Flops a, Flops b, Rest... rest) {
  return mul(mul(a, b), rest...);
}

}  // namespace

std::string flops_to_string(Flops v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

std::string flops_to_tflops(Flops v) {
  // Milli-TFLOPs, i.e. units of 1e9, rounded half-up.
  const Flops milli = (v + 500000000) / 1000000000;
  std::string frac = flops_to_string(milli % 1000);
  frac.insert(0, 3 - frac.size(), '0');
  return flops_to_string(milli / 1000) + "." + frac;
}

void FlopsArch::validate() const {
  const auto positive = [](std::uint64_t v, const char* field) {
    if (v == 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(field) + " must be positive");
    }
  };
  positive(vit_layers, "vit_layers");
  positive(vit_hidden, "vit_hidden");
  positive(merge_factor, "merge_factor");
  positive(llm_layers, "llm_layers");
  positive(llm_hidden, "llm_hidden");
  positive(query_heads, "query_heads");
  positive(kv_heads, "kv_heads");
  if (llm_hidden % query_heads != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "query_heads must divide llm_hidden");
  }
}

FlopsArch qwen3vl_2b_arch() {
  FlopsArch a;
  a.name = "qwen3vl-2b";
  a.vit_layers = 24;
  a.vit_hidden = 1024;
  a.vit_ffn = 4096;
  a.merge_factor = 2;
  a.deepstack_layers = 3;
  a.llm_layers = 28;
  a.llm_hidden = 2048;
  a.llm_ffn = 6144;
  a.query_heads = 16;
  a.kv_heads = 8;
  return a;
}

FlopsArch parse_arch_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kDecode, std::string("arch config: ") + e.what());
  }
  if (!j.is_object()) {
    throw Error(ErrorCode::kDecode, "arch config must be a JSON object");
  }
  const auto field = [&](const char* key) -> std::uint64_t {
    if (!j.contains(key)) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string("arch config lacks '") + key + "'");
    }
    const auto& v = j.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string("arch field '") + key +
                      "' must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
  };
  FlopsArch a;
  a.name = j.value("name", std::string("custom"));
  a.vit_layers = field("vit_layers");
  a.vit_hidden = field("vit_hidden");
  a.vit_ffn = field("vit_ffn");
  a.merge_factor = field("merge_factor");
  a.deepstack_layers = field("deepstack_layers");
  a.llm_layers = field("llm_layers");
  a.llm_hidden = field("llm_hidden");
  a.llm_ffn = field("llm_ffn");
  a.query_heads = field("query_heads");
  a.kv_heads = field("kv_heads");
  a.validate();
  if (j.contains("head_dim") && field("head_dim") != a.head_dim()) {
    throw Error(ErrorCode::kInvalidArgument,
                "head_dim must equal llm_hidden / query_heads");
  }
  return a;
}

FlopsArch load_arch_file(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  return parse_arch_json(
      std::string_view(reinterpret_cast<const char*>(bytes.data()),
                       bytes.size()));
}

FlopsReport flops_total(const FlopsArch& arch, std::uint64_t vit_tokens,
                        std::uint64_t text_tokens, std::uint64_t pages) {
  arch.validate();
  if (pages == 0) {
    throw Error(ErrorCode::kInvalidArgument, "page count must be positive");
  }
  const std::uint64_t group = arch.merge_group();
  if (vit_tokens % group != 0) {
    throw Error(ErrorCode::kNotMergeDivisible,
                std::to_string(vit_tokens) + " patches do not form whole " +
                    std::to_string(arch.merge_factor) + "x" +
                    std::to_string(arch.merge_factor) + " merge groups");
  }
  const Flops n = vit_tokens;
  const Flops p = pages;
  const Flops dv = arch.vit_hidden;
  const Flops din = arch.merger_input_dim();
  const Flops dl = arch.llm_hidden;

  FlopsReport r;
  r.vit_tokens = vit_tokens;
  r.text_tokens = text_tokens;
  r.pages = pages;

  const Flops vit_linear = mul(n, add(mul(8, dv, dv), mul(4, dv, arch.vit_ffn)));
  const Flops vit_attention = mul(4, n, n, dv);
  r.vit = mul(p, arch.vit_layers, add(vit_linear, vit_attention));

  const Flops merged = n / group;
  r.merger = mul(p, arch.merger_count(), merged,
                 add(mul(2, din, din), mul(2, din, dl)));

  const Flops seq = add(mul(p, merged), text_tokens);
  if (seq > UINT64_MAX) {
    throw Error(ErrorCode::kOverflow, "LLM sequence length exceeds 64 bits");
  }
  r.llm_seq_len = static_cast<std::uint64_t>(seq);
  const Flops per_token =
      add(mul(2, dl, 2 * Flops{arch.query_heads} + 2 * Flops{arch.kv_heads},
              arch.head_dim()),
          mul(6, dl, arch.llm_ffn));
  r.llm = mul(arch.llm_layers, add(mul(seq, per_token), mul(4, seq, seq, dl)));

  r.total = add(add(r.vit, r.merger), r.llm);
  return r;
}

SavingsReport savings_report(const FlopsArch& arch, std::uint64_t vit_tokens,
                             std::uint64_t retained_tokens,
                             std::uint64_t text_tokens, std::uint64_t pages) {
  if (retained_tokens > vit_tokens) {
    throw Error(ErrorCode::kInvalidArgument,
                "retained patches exceed the full patch count");
  }
  SavingsReport s;
  s.full = flops_total(arch, vit_tokens, text_tokens, pages);
  s.pruned = flops_total(arch, retained_tokens, text_tokens, pages);
  s.speedup = s.pruned.total == 0
                  ? 0.0
                  : static_cast<double>(s.full.total) /
                        static_cast<double>(s.pruned.total);
  return s;
}

std::uint64_t vit_tokens_for_image(const FlopsArch& arch, std::uint32_t width,
                                   std::uint32_t height,
                                   std::uint32_t block_size) {
  arch.validate();
  if (block_size == 0 || block_size % arch.merge_factor != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "merge factor must divide the block size");
  }
  const std::uint64_t rows = (std::uint64_t{height} + block_size - 1) / block_size;
  const std::uint64_t cols = (std::uint64_t{width} + block_size - 1) / block_size;
  return rows * cols * arch.merge_group();
}

std::uint64_t vit_tokens_for_blocks(const FlopsArch& arch,
                                    std::uint64_t blocks) {
  return blocks * arch.merge_group();
}

}  // namespace blockprune
