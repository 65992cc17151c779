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

#include <gtest/gtest.h>

#include <cmath>

#include "blockprune/error.h"

namespace blockprune {
namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no Error thrown";
  return ErrorCode::kInvalidArgument;
}

// Values from tests/oracle/flops_oracle.py (Python big integers).
constexpr std::uint64_t kVit4096 = 4123168604160ULL;
constexpr std::uint64_t kMerger4096 = 206158430208ULL;
constexpr std::uint64_t kLlm4096T128 = 3551401082880ULL;
constexpr std::uint64_t kTotal4096T128 = 7880728117248ULL;
constexpr std::uint64_t kTotal4096T0 = 7456063225856ULL;
constexpr std::uint64_t kTotal4T0 = 5437620224ULL;
constexpr std::uint64_t kPageFull = 15671454334976ULL;
constexpr std::uint64_t kPagePruned = 6412897845248ULL;
constexpr std::uint64_t kPages8Full = 167174790447104ULL;

TEST(FlopsArch, Preset) {
  const FlopsArch a = qwen3vl_2b_arch();
  EXPECT_EQ(a.merger_count(), 4u);
  EXPECT_EQ(a.merger_input_dim(), 4096u);
  EXPECT_EQ(a.head_dim(), 128u);
  EXPECT_EQ(a.merge_group(), 4u);
}

TEST(FlopsTotal, GoldenValues) {
  const FlopsArch a = qwen3vl_2b_arch();
  const FlopsReport r = flops_total(a, 4096, 128);
  EXPECT_EQ(r.vit, Flops{kVit4096});
  EXPECT_EQ(r.merger, Flops{kMerger4096});
  EXPECT_EQ(r.llm, Flops{kLlm4096T128});
  EXPECT_EQ(r.total, Flops{kTotal4096T128});
  EXPECT_EQ(r.llm_seq_len, 1024u + 128u);
  EXPECT_EQ(flops_total(a, 4096, 0).total, Flops{kTotal4096T0});
  EXPECT_EQ(flops_total(a, 4, 0).total, Flops{kTotal4T0});
  EXPECT_EQ(flops_total(a, 7216, 0).total, Flops{kPageFull});
  EXPECT_EQ(flops_total(a, 3628, 0).total, Flops{kPagePruned});
  EXPECT_EQ(flops_total(a, 7216, 0, 8).total, Flops{kPages8Full});
}

TEST(FlopsTotal, Additivity) {
  const FlopsArch a = qwen3vl_2b_arch();
  for (std::uint64_t n = 4; n <= 20000; n += 1284) {
    for (std::uint64_t t : {0ULL, 7ULL, 512ULL}) {
      const FlopsReport r = flops_total(a, n, t);
      EXPECT_EQ(r.total, r.vit + r.merger + r.llm);
    }
  }
}

TEST(FlopsTotal, ViTAttentionScalesQuadratically) {
  FlopsArch a = qwen3vl_2b_arch();
  a.vit_ffn = 0;
  a.llm_ffn = 0;
  // vit(2N) - 2 vit(N) isolates the quadratic term: 8 L N^2 D.
  auto attn = [&](std::uint64_t n) {
    return flops_total(a, 2 * n, 0).vit - 2 * flops_total(a, n, 0).vit;
  };
  for (std::uint64_t n : {4ULL, 64ULL, 1024ULL, 4096ULL}) {
    EXPECT_EQ(attn(n), Flops{8} * a.vit_layers * n * n * a.vit_hidden);
    EXPECT_EQ(attn(2 * n), 4 * attn(n));
  }
}

TEST(FlopsTotal, AttentionIndependentOfKvHeads) {
  FlopsArch a = qwen3vl_2b_arch();
  FlopsArch b = a;
  b.kv_heads = 2;
  // Second difference in the sequence length removes every linear term.
  auto second_diff = [](const FlopsArch& arch, std::uint64_t n) {
    return flops_total(arch, n + 8, 0).llm + flops_total(arch, n, 0).llm -
           2 * flops_total(arch, n + 4, 0).llm;
  };
  for (std::uint64_t n : {4ULL, 400ULL, 4000ULL}) {
    EXPECT_EQ(second_diff(a, n), second_diff(b, n));
    EXPECT_EQ(second_diff(a, n), Flops{8} * a.llm_layers * a.llm_hidden);
  }
  EXPECT_NE(flops_total(a, 400, 0).llm, flops_total(b, 400, 0).llm);
}

TEST(FlopsTotal, StrictlyMonotone) {
  const FlopsArch a = qwen3vl_2b_arch();
  Flops prev = 0;
  for (std::uint64_t n = 4; n <= 4000; n += 4) {
    const Flops f = flops_total(a, n, 16).total;
    EXPECT_GT(f, prev);
    prev = f;
  }
  prev = 0;
  for (std::uint64_t t = 0; t <= 2000; t += 3) {
    const Flops f = flops_total(a, 400, t).total;
    EXPECT_GT(f, prev);
    prev = f;
  }
}

TEST(FlopsTotal, ViTHomogeneity) {
  const FlopsArch a = qwen3vl_2b_arch();
  const std::uint64_t n1 = 64;
  const std::uint64_t n2 = 128;
  // Split vit(N) = N*lin + N^2*quad using two sample points.
  auto split = [&](const FlopsArch& arch) {
    const Flops v1 = flops_total(arch, n1, 0).vit;
    const Flops v2 = flops_total(arch, n2, 0).vit;
    // v2 - 2 v1 = quad * (n2^2 - 2 n1^2) with n2 = 2 n1.
    const Flops quad = (v2 - 2 * v1) / (n2 * n2 - 2 * n1 * n1);
    const Flops lin = (v1 - quad * n1 * n1) / n1;
    return std::pair{lin, quad};
  };
  for (std::uint64_t k : {2ULL, 3ULL}) {
    FlopsArch s = a;
    s.vit_hidden *= k;
    s.vit_ffn *= k;
    const auto [lin, quad] = split(a);
    const auto [slin, squad] = split(s);
    EXPECT_EQ(slin, lin * k * k);
    EXPECT_EQ(squad, quad * k);
  }
}

TEST(FlopsTotal, Pages) {
  const FlopsArch a = qwen3vl_2b_arch();
  const FlopsReport one = flops_total(a, 400, 10);
  const FlopsReport three = flops_total(a, 400, 10, 3);
  EXPECT_EQ(three.vit, 3 * one.vit);
  EXPECT_EQ(three.merger, 3 * one.merger);
  EXPECT_EQ(three.llm_seq_len, 3u * 100u + 10u);
  EXPECT_EQ(three.llm, flops_total(a, 1200, 10).llm);
}

TEST(FlopsTotal, Errors) {
  const FlopsArch a = qwen3vl_2b_arch();
  EXPECT_EQ(code_of([&] { flops_total(a, 6, 0); }), ErrorCode::kNotMergeDivisible);
  EXPECT_EQ(code_of([&] { flops_total(a, 1ULL << 62, 0); }), ErrorCode::kOverflow);
  FlopsArch bad = a;
  bad.query_heads = 3;
  EXPECT_EQ(code_of([&] { flops_total(bad, 4, 0); }), ErrorCode::kInvalidArgument);
  bad = a;
  bad.vit_layers = 0;
  EXPECT_EQ(code_of([&] { flops_total(bad, 4, 0); }), ErrorCode::kInvalidArgument);
}

TEST(Savings, Basics) {
  const FlopsArch a = qwen3vl_2b_arch();
  const SavingsReport same = savings_report(a, 4096, 4096, 64);
  EXPECT_DOUBLE_EQ(same.speedup, 1.0);
  const SavingsReport page = savings_report(a, 7216, 3628, 0);
  EXPECT_EQ(page.pruned.llm_seq_len, 907u);
  EXPECT_NEAR(page.speedup, 2.443740, 1e-6);
  EXPECT_EQ(code_of([&] { savings_report(a, 400, 404, 0); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { savings_report(a, 400, 6, 0); }),
            ErrorCode::kNotMergeDivisible);
}

TEST(Savings, AttentionOnlyHalvingGivesFourfold) {
  FlopsArch a = qwen3vl_2b_arch();
  a.vit_ffn = 0;
  a.llm_ffn = 0;
  const FlopsReport full = flops_total(a, 4096, 0);
  const FlopsReport half = flops_total(a, 2048, 0);
  const Flops attn_full = Flops{4} * a.vit_layers * 4096 * 4096 * a.vit_hidden;
  const Flops attn_half = Flops{4} * a.vit_layers * 2048 * 2048 * a.vit_hidden;
  EXPECT_EQ(attn_full, 4 * attn_half);
  EXPECT_EQ(full.vit - attn_full, 2 * (half.vit - attn_half));
}

TEST(Tokens, FromImage) {
  const FlopsArch a = qwen3vl_2b_arch();
  EXPECT_EQ(vit_tokens_for_image(a, 1284, 1405, 32), 41u * 44u * 4u);
  EXPECT_EQ(vit_tokens_for_image(a, 1024, 1024, 32), 4096u);
  EXPECT_EQ(vit_tokens_for_blocks(a, 10), 40u);
  EXPECT_EQ(code_of([&] { vit_tokens_for_image(a, 64, 64, 31); }),
            ErrorCode::kInvalidArgument);
}

TEST(Format, Strings) {
  EXPECT_EQ(flops_to_string(0), "0");
  EXPECT_EQ(flops_to_string(Flops{kTotal4096T128}), "7880728117248");
  const Flops big = Flops{1} << 100;
  EXPECT_EQ(flops_to_string(big), "1267650600228229401496703205376");
  EXPECT_EQ(flops_to_tflops(Flops{kTotal4096T128}), "7.881");
  EXPECT_EQ(flops_to_tflops(Flops{1499999999}), "0.001");
  EXPECT_EQ(flops_to_tflops(Flops{1500000000}), "0.002");
  EXPECT_EQ(flops_to_tflops(Flops{2'702'780'728'344'576ULL}), "2702.781");
}

TEST(ArchConfig, ParseJson) {
  const FlopsArch a = parse_arch_json(R"({
    "name": "two-b", "vit_layers": 24, "vit_hidden": 1024, "vit_ffn": 4096,
    "merge_factor": 2, "deepstack_layers": 3, "llm_layers": 28,
    "llm_hidden": 2048, "llm_ffn": 6144, "query_heads": 16, "kv_heads": 8,
    "head_dim": 128})");
  EXPECT_EQ(a.name, "two-b");
  EXPECT_EQ(flops_total(a, 4096, 128).total, Flops{kTotal4096T128});
  EXPECT_EQ(code_of([] { parse_arch_json("{\"vit_layers\": 1}"); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { parse_arch_json("[1, 2]"); }), ErrorCode::kDecode);
  EXPECT_EQ(code_of([] { parse_arch_json("{nope"); }), ErrorCode::kDecode);
  EXPECT_EQ(code_of([] {
              parse_arch_json(R"({"vit_layers": 24, "vit_hidden": 1024,
                "vit_ffn": 4096, "merge_factor": 2, "deepstack_layers": 3,
                "llm_layers": 28, "llm_hidden": 2048, "llm_ffn": 6144,
                "query_heads": 16, "kv_heads": 8, "head_dim": 64})");
            }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] {
              parse_arch_json(R"({"vit_layers": -1, "vit_hidden": 1024,
                "vit_ffn": 4096, "merge_factor": 2, "deepstack_layers": 3,
                "llm_layers": 28, "llm_hidden": 2048, "llm_ffn": 6144,
                "query_heads": 16, "kv_heads": 8})");
            }),
            ErrorCode::kInvalidArgument);
}

}  // namespace
}  // namespace blockprune
