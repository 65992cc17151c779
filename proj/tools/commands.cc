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

#include "commands.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "blockprune/analysis.h"
#include "blockprune/baselines.h"
#include "blockprune/block_grid.h"
#include "blockprune/codec.h"
#include "blockprune/container.h"
#include "blockprune/cost_model.h"
#include "blockprune/error.h"
#include "blockprune/image_io.h"
#include "blockprune/mask_io.h"
#include "blockprune/version.h"

namespace blockprune::cli {
namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;

// String-typed flags shared by every codec-driven subcommand; parsed into a
// CodecConfig once the command line has been read.
struct CodecFlags {
  std::string predictor = "pred2d";
  std::string metric = "max";
  double tau = 0.0;
  std::uint32_t block_size = 32;
  std::string pad;

  CodecConfig resolve(PadMode default_pad) const {
    CodecConfig c;
    c.predictor = parse_predictor(predictor);
    c.metric = parse_metric(metric);
    c.tau = Tau::from_double(tau);
    c.block_size = block_size;
    c.pad_mode = pad.empty() ? default_pad : parse_pad_mode(pad);
    c.validate();
    return c;
  }
};

void add_codec_flags(CLI::App* cmd, CodecFlags& f) {
  cmd->add_option("--predictor", f.predictor, "raster, serpentine or pred2d")
      ->check(CLI::IsMember({"raster", "serpentine", "pred2d"}))
      ->capture_default_str();
  cmd->add_option("--metric", f.metric, "mae or max")
      ->check(CLI::IsMember({"mae", "max"}))
      ->capture_default_str();
  cmd->add_option("--tau", f.tau, "omission threshold in [0, 1]")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--block-size", f.block_size, "block side in pixels")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--pad", f.pad, "reject or edge")
      ->check(CLI::IsMember({"reject", "edge"}));
}

void add_format_flag(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
}

std::vector<std::uint8_t> as_bytes(const std::string& s) {
  return {s.begin(), s.end()};
}

// Writes `text` to `path`, or to `out` when no path was given.
void emit(const std::string& path, const std::string& text,
          std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_file_atomic(path, as_bytes(text));
  }
}

std::string read_text(const std::string& path) {
  const auto bytes = read_file(path);
  return {bytes.begin(), bytes.end()};
}

std::string percent(double ratio) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f%%", ratio * 100.0);
  return buf;
}

bool is_image_path(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png" || ext == ".ppm" || ext == ".pgm";
}

// ---- compress / decompress ------------------------------------------------

struct CompressArgs {
  std::string input;
  std::string output;
  CodecFlags codec;
};

int cmd_compress(const CompressArgs& a, std::ostream& out) {
  const CodecConfig config = a.codec.resolve(PadMode::kReject);
  const PixelImage image = read_image(a.input);
  const Encoding enc = compress(image, config);
  write_file_atomic(a.output, serialize(enc.compressed));
  out << "retained " << enc.mask.retained_count() << "/" << enc.mask.total()
      << " (" << percent(enc.mask.retain_ratio()) << ")\n";
  return kExitOk;
}

struct DecompressArgs {
  std::string input;
  std::string output;
};

int cmd_decompress(const DecompressArgs& a, std::ostream& out) {
  const CompressedImage comp = deserialize(read_file(a.input));
  const PixelImage image = decompress_image(comp);
  const fs::path path(a.output);
  std::vector<std::uint8_t> bytes = path.extension() == ".png"
                                        ? encode_png(image)
                                        : encode_pnm(image);
  write_file_atomic(path, bytes);
  out << "decoded " << image.width() << "x" << image.height() << " from "
      << comp.retained_count() << "/" << std::size_t{comp.rows} * comp.cols
      << " blocks\n";
  return kExitOk;
}

// ---- mask ------------------------------------------------------------------

struct MaskArgs {
  std::string input;
  std::string output;
  std::string format = "json";
  CodecFlags codec;
};

int cmd_mask(const MaskArgs& a, std::ostream& out) {
  const CodecConfig config = a.codec.resolve(PadMode::kReject);
  const RetainMask mask = compute_retain_mask(read_image(a.input), config);
  emit(a.output,
       a.format == "csv" ? mask_to_csv(mask) : mask_to_json(mask, config),
       out);
  return kExitOk;
}

// ---- visualize -------------------------------------------------------------

struct VisualizeArgs {
  std::string input;
  std::string output;
  std::string mask_file;
  CodecFlags codec;
};

int cmd_visualize(const VisualizeArgs& a, std::ostream& out) {
  const CodecConfig config = a.codec.resolve(PadMode::kEdgeReplicate);
  PixelImage image = read_image(a.input);
  const std::uint32_t bs = config.block_size;
  const std::uint32_t rows = (image.height() + bs - 1) / bs;
  const std::uint32_t cols = (image.width() + bs - 1) / bs;

  RetainMask mask;
  if (!a.mask_file.empty()) {
    mask = mask_from_json(read_text(a.mask_file));
    if (mask.rows() != rows || mask.cols() != cols) {
      throw Error(ErrorCode::kConfigMismatch,
                  "mask is " + std::to_string(mask.rows()) + "x" +
                      std::to_string(mask.cols()) + " but the image grid is " +
                      std::to_string(rows) + "x" + std::to_string(cols));
    }
  } else {
    mask = compute_retain_mask(image, config);
  }

  for (std::uint32_t y = 0; y < image.height(); ++y) {
    for (std::uint32_t x = 0; x < image.width(); ++x) {
      if (mask.kept(y / bs, x / bs)) continue;
      for (std::uint32_t c = 0; c < image.channels(); ++c) {
        image.at(x, y, c) = gray_out(image.at(x, y, c));
      }
    }
  }
  const fs::path path(a.output);
  write_file_atomic(path, path.extension() == ".png" ? encode_png(image)
                                                     : encode_pnm(image));
  out << "kept " << mask.retained_count() << "/" << mask.total() << " ("
      << percent(mask.retain_ratio()) << ")\n";
  return kExitOk;
}

// ---- analyze ---------------------------------------------------------------

struct AnalyzeArgs {
  std::string corpus;
  std::string output;
  std::string format = "json";
  unsigned threads = 0;
  bool strict = false;
  CodecFlags codec;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out, std::ostream& err) {
  const CodecConfig config = a.codec.resolve(PadMode::kEdgeReplicate);
  const auto source = corpus_from_directory(a.corpus);
  const CorpusReport report = analyze_corpus(source, config, a.threads);
  emit(a.output,
       a.format == "csv" ? report_to_csv(report) : report_to_json(report),
       out);
  for (const auto& f : report.failures) {
    err << "failed: " << f.id << ": " << f.message << "\n";
  }
  if (!a.output.empty() && a.output != "-") {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "analyzed %zu images (%zu failed): retain ratio %.4f, "
                  "duplicate ratio %.4f\n",
                  report.images.size(), report.failures.size(),
                  report.dataset_retain_ratio, report.duplicate_ratio);
    out << buf;
  }
  if (a.strict && !report.failures.empty()) return kExitFailure;
  return kExitOk;
}

// ---- flops -----------------------------------------------------------------

struct FlopsArgs {
  std::string preset = "qwen3vl-2b";
  std::string arch_file;
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint32_t block_size = 32;
  std::uint64_t tokens = 0;
  std::optional<std::uint64_t> retained_tokens;
  std::optional<double> retain_ratio;
  std::uint64_t text_tokens = 0;
  std::uint64_t pages = 1;
  std::string format = "table";
};

std::string pad_right(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string pad_left(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

void print_flops_table(const FlopsArch& arch, const SavingsReport& s,
                       std::ostream& out) {
  out << "arch " << arch.name << ", pages " << s.full.pages << ", text tokens "
      << s.full.text_tokens << "\n";
  out << "vision tokens/page: full " << s.full.vit_tokens << ", pruned "
      << s.pruned.vit_tokens << "; llm sequence: full " << s.full.llm_seq_len
      << ", pruned " << s.pruned.llm_seq_len << "\n";
  out << pad_right("stage", 8) << pad_left("full FLOPs", 24)
      << pad_left("TFLOPs", 12) << pad_left("pruned FLOPs", 24)
      << pad_left("TFLOPs", 12) << pad_left("speedup", 10) << "\n";
  auto row = [&](const char* name, Flops full, Flops pruned) {
    char ratio[32] = "-";
    if (pruned != 0) {
      std::snprintf(ratio, sizeof(ratio), "%.3fx",
                    static_cast<double>(full) / static_cast<double>(pruned));
    }
    out << pad_right(name, 8) << pad_left(flops_to_string(full), 24)
        << pad_left(flops_to_tflops(full), 12)
        << pad_left(flops_to_string(pruned), 24)
        << pad_left(flops_to_tflops(pruned), 12) << pad_left(ratio, 10)
        << "\n";
  };
  row("vit", s.full.vit, s.pruned.vit);
  row("merger", s.full.merger, s.pruned.merger);
  row("llm", s.full.llm, s.pruned.llm);
  row("total", s.full.total, s.pruned.total);
}

std::string flops_json(const FlopsArch& arch, const SavingsReport& s) {
  auto stage = [](const FlopsReport& r) {
    std::ostringstream o;
    o << "{\"vit_tokens\": " << r.vit_tokens
      << ", \"llm_seq_len\": " << r.llm_seq_len << ", \"vit\": "
      << flops_to_string(r.vit) << ", \"merger\": " << flops_to_string(r.merger)
      << ", \"llm\": " << flops_to_string(r.llm)
      << ", \"total\": " << flops_to_string(r.total) << "}";
    return o.str();
  };
  char speed[32];
  std::snprintf(speed, sizeof(speed), "%.6f", s.speedup);
  std::ostringstream o;
  o << "{\n  \"arch\": \"" << arch.name << "\",\n  \"pages\": " << s.full.pages
    << ",\n  \"text_tokens\": " << s.full.text_tokens << ",\n  \"full\": "
    << stage(s.full) << ",\n  \"pruned\": " << stage(s.pruned)
    << ",\n  \"speedup\": " << speed << "\n}\n";
  return o.str();
}

int cmd_flops(const FlopsArgs& a, std::ostream& out) {
  FlopsArch arch;
  if (!a.arch_file.empty()) {
    arch = load_arch_file(a.arch_file);
  } else if (a.preset == "qwen3vl-2b") {
    arch = qwen3vl_2b_arch();
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown preset: " + a.preset);
  }

  std::uint64_t n = a.tokens;
  if (a.width != 0 || a.height != 0) {
    if (a.width == 0 || a.height == 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "--width and --height must be given together");
    }
    n = vit_tokens_for_image(arch, a.width, a.height, a.block_size);
  }
  if (n == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "give either --tokens or --width/--height");
  }

  std::uint64_t ns = n;
  if (a.retained_tokens) {
    ns = *a.retained_tokens;
  } else if (a.retain_ratio) {
    // Retention is decided per merge group, so round the kept group count.
    const std::uint64_t groups = n / arch.merge_group();
    ns = static_cast<std::uint64_t>(
             std::llround(*a.retain_ratio * static_cast<double>(groups))) *
         arch.merge_group();
  }

  const SavingsReport s = savings_report(arch, n, ns, a.text_tokens, a.pages);
  if (a.format == "json") {
    out << flops_json(arch, s);
  } else {
    print_flops_table(arch, s, out);
  }
  return kExitOk;
}

// ---- baseline --------------------------------------------------------------

struct BaselineArgs {
  std::string method;
  std::string input;
  std::string output;
  std::string budget_from;
  std::uint64_t seed = 0;
  std::string format = "json";
  CodecFlags codec;
};

Budget parse_budget(const std::string& spec) {
  if (!spec.empty() &&
      std::all_of(spec.begin(), spec.end(),
                  [](unsigned char c) { return std::isdigit(c) != 0; })) {
    try {
      return Budget{static_cast<std::size_t>(std::stoull(spec))};
    } catch (const std::out_of_range&) {
      throw Error(ErrorCode::kBudgetOutOfRange, "budget too large: " + spec);
    }
  }
  return Budget::from_mask(mask_from_json(read_text(spec)));
}

int cmd_baseline(const BaselineArgs& a, std::ostream& out,
                 std::ostream& err) {
  const CodecConfig config = a.codec.resolve(PadMode::kReject);
  const Budget budget = parse_budget(a.budget_from);
  const PixelImage image = read_image(a.input);

  if (a.method == "resize") {
    const Dimensions d = resize_target_dims(image.width(), image.height(),
                                            budget, config.block_size);
    out << "resize " << image.width() << "x" << image.height() << " -> "
        << d.width << "x" << d.height << " ("
        << std::size_t{d.width / config.block_size} *
               (d.height / config.block_size)
        << " blocks, budget " << budget.target_retained << ")\n";
    if (!a.output.empty()) {
      if (!is_image_path(a.output)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "resize output must be a .png, .ppm or .pgm path");
      }
      write_image(a.output, resize_bilinear(image, d.width, d.height));
    }
    return kExitOk;
  }

  const BlockGrid grid = partition(image, config.block_size, config.pad_mode);
  RetainMask mask;
  if (a.method == "random") {
    mask = random_mask(grid.rows(), grid.cols(), budget, a.seed);
  } else {
    ConnCompResult r = conncomp_mask(grid, budget, a.seed);
    if (r.below_component_count) {
      err << "warning: budget " << budget.target_retained
          << " is below the component count; kept one block in each of the "
             "largest components\n";
    }
    mask = std::move(r.mask);
  }
  emit(a.output,
       a.format == "csv" ? mask_to_csv(mask) : mask_to_json(mask, std::nullopt),
       out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Block-level redundancy pruning for image patch sequences",
               "blockprune"};
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "",
                 "read flags from an INI/TOML file (command-line flags win)");
  app.require_subcommand(1);

  CompressArgs compress_args;
  auto* compress_cmd =
      app.add_subcommand("compress", "encode an image into a PXPR container");
  compress_cmd->add_option("-i,--input", compress_args.input, "PNG/PPM/PGM")
      ->required();
  compress_cmd->add_option("-o,--output", compress_args.output, "container")
      ->required();
  add_codec_flags(compress_cmd, compress_args.codec);

  DecompressArgs decompress_args;
  auto* decompress_cmd =
      app.add_subcommand("decompress", "rebuild an image from a container");
  decompress_cmd->add_option("-i,--input", decompress_args.input)->required();
  decompress_cmd
      ->add_option("-o,--output", decompress_args.output,
                   "image path (.png writes PNG, otherwise PPM/PGM)")
      ->required();

  MaskArgs mask_args;
  auto* mask_cmd = app.add_subcommand("mask", "export the retain mask");
  mask_cmd->add_option("-i,--input", mask_args.input)->required();
  mask_cmd->add_option("-o,--output", mask_args.output, "default: stdout");
  add_format_flag(mask_cmd, mask_args.format);
  add_codec_flags(mask_cmd, mask_args.codec);

  VisualizeArgs vis_args;
  auto* vis_cmd =
      app.add_subcommand("visualize", "gray out omitted blocks of an image");
  vis_cmd->add_option("-i,--input", vis_args.input)->required();
  vis_cmd->add_option("-o,--output", vis_args.output)->required();
  vis_cmd->add_option("--mask-file", vis_args.mask_file,
                      "use this mask JSON instead of running the codec");
  add_codec_flags(vis_cmd, vis_args.codec);

  AnalyzeArgs analyze_args;
  auto* analyze_cmd =
      app.add_subcommand("analyze", "retain and duplicate ratios of a corpus");
  analyze_cmd->add_option("corpus", analyze_args.corpus, "image directory")
      ->required();
  analyze_cmd->add_option("-o,--output", analyze_args.output,
                          "report path (default: stdout)");
  add_format_flag(analyze_cmd, analyze_args.format);
  analyze_cmd->add_option("--threads", analyze_args.threads,
                          "worker threads (0: hardware concurrency)");
  analyze_cmd->add_flag("--strict", analyze_args.strict,
                        "fail if any image fails");
  add_codec_flags(analyze_cmd, analyze_args.codec);

  FlopsArgs flops_args;
  auto* flops_cmd = app.add_subcommand("flops", "FLOPs model and speedup");
  auto* preset_opt = flops_cmd
      ->add_option("--preset", flops_args.preset, "built-in architecture")
      ->check(CLI::IsMember({"qwen3vl-2b"}))
      ->capture_default_str();
  flops_cmd->add_option("--arch", flops_args.arch_file, "architecture JSON")
      ->excludes(preset_opt);
  auto* width_opt = flops_cmd->add_option("--width", flops_args.width);
  auto* height_opt = flops_cmd->add_option("--height", flops_args.height);
  flops_cmd->add_option("--block-size", flops_args.block_size)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  flops_cmd->add_option("--tokens", flops_args.tokens, "vision tokens per page")
      ->excludes(width_opt)
      ->excludes(height_opt);
  auto* retained_opt = flops_cmd->add_option(
      "--retained", flops_args.retained_tokens, "retained vision tokens");
  flops_cmd
      ->add_option("--retain-ratio", flops_args.retain_ratio,
                   "fraction of blocks retained")
      ->check(CLI::Range(0.0, 1.0))
      ->excludes(retained_opt);
  flops_cmd->add_option("--text-tokens", flops_args.text_tokens)
      ->capture_default_str();
  flops_cmd->add_option("--pages", flops_args.pages)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  flops_cmd->add_option("--format", flops_args.format, "table or json")
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();

  BaselineArgs baseline_args;
  auto* baseline_cmd =
      app.add_subcommand("baseline", "budget-matched baseline selection");
  baseline_cmd->add_option("--method", baseline_args.method)
      ->check(CLI::IsMember({"random", "conncomp", "resize"}))
      ->required();
  baseline_cmd->add_option("-i,--input", baseline_args.input)->required();
  baseline_cmd->add_option("-o,--output", baseline_args.output,
                           "mask (default: stdout) or resized image");
  baseline_cmd
      ->add_option("--budget-from", baseline_args.budget_from,
                   "mask JSON file or a block count")
      ->required();
  baseline_cmd->add_option("--seed", baseline_args.seed)->capture_default_str();
  add_format_flag(baseline_cmd, baseline_args.format);
  add_codec_flags(baseline_cmd, baseline_args.codec);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (compress_cmd->parsed()) return cmd_compress(compress_args, out);
    if (decompress_cmd->parsed()) return cmd_decompress(decompress_args, out);
    if (mask_cmd->parsed()) return cmd_mask(mask_args, out);
    if (vis_cmd->parsed()) return cmd_visualize(vis_args, out);
    if (analyze_cmd->parsed()) return cmd_analyze(analyze_args, out, err);
    if (flops_cmd->parsed()) return cmd_flops(flops_args, out);
    if (baseline_cmd->parsed()) return cmd_baseline(baseline_args, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace blockprune::cli
