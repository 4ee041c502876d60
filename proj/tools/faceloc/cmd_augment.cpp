// Copyright 2026 The faceloc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>

#include "cli_util.hpp"
#include "faceloc/annotations.hpp"
#include "faceloc/augment.hpp"
#include "faceloc/error.hpp"
#include "faceloc/image.hpp"

namespace faceloc::cli {
namespace {

struct AugmentOptions {
  std::string image;
  std::string annotations;
  std::uint64_t seed = 0;
  int count = 1;
  std::string out_dir;
  double min_scale = 0.3;
  double max_scale = 1.0;
  std::string output_size = "640x640";
  double flip_prob = 0.5;
  bool no_photometric = false;
  std::string image_format = "ppm";
};

enum Stream : std::uint64_t { kCropStream = 0, kFlipStream = 1, kPhotometricStream = 2 };

const ImageAnnotations& find_entry(const std::vector<ImageAnnotations>& all, const std::string& image_path) {
  if (all.size() == 1) return all.front();
  const auto name = std::filesystem::path(image_path).filename().string();
  for (const auto& entry : all) {
    if (entry.image == image_path) return entry;
  }
  for (const auto& entry : all) {
    if (std::filesystem::path(entry.image).filename().string() == name) return entry;
  }
  throw ParseError("no annotation entry for image " + image_path);
}

int run(const AugmentOptions& opt) {
  if (opt.count < 1) throw UsageError("--count must be at least 1");
  if (!(opt.flip_prob >= 0.0 && opt.flip_prob <= 1.0)) throw UsageError("--flip-prob must lie in [0, 1]");
  if (!(opt.min_scale > 0.0) || opt.max_scale < opt.min_scale || opt.max_scale > 1.0) {
    throw UsageError("--min-scale/--max-scale must satisfy 0 < min <= max <= 1");
  }
  const char* ext = nullptr;
  if (opt.image_format == "ppm") {
    ext = ".ppm";
  } else if (opt.image_format == "u8" || opt.image_format == "f32") {
    ext = ".raster";
  } else {
    throw UsageError("--image-format must be one of ppm, u8, f32");
  }
  CropOptions crop{opt.min_scale, opt.max_scale, parse_size(opt.output_size, "output-size")};

  const Image source = read_image(opt.image);
  const auto all = load_annotations(opt.annotations);
  const auto& entry = find_entry(all, opt.image);

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(opt.out_dir, ec);
  if (ec) throw ParseError("cannot create output directory: " + ec.message(), opt.out_dir);
  const fs::path dir(opt.out_dir);

  std::vector<ImageAnnotations> outputs;
  std::string log = "name,seed,crop_x,crop_y,crop_side,flipped,faces\n";
  std::size_t kept_total = 0;
  for (int i = 0; i < opt.count; ++i) {
    const std::uint64_t seed = mix_seed(opt.seed, static_cast<std::uint64_t>(i));
    AugmentedSample sample =
        random_square_crop({source.width(), source.height()}, entry.faces, mix_seed(seed, kCropStream), crop);
    std::mt19937_64 flip_rng(mix_seed(seed, kFlipStream));
    const double u = static_cast<double>(flip_rng() >> 11) * 0x1.0p-53;
    if (u < opt.flip_prob) sample = horizontal_flip(sample);

    Image pixels = render_sample(source, sample);
    if (!opt.no_photometric) pixels = photometric_distort(pixels, mix_seed(seed, kPhotometricStream));

    char name[32];
    std::snprintf(name, sizeof name, "sample_%04d%s", i, ext);
    const std::string path = (dir / name).string();
    if (opt.image_format == "ppm") {
      write_ppm(pixels, path);
    } else {
      write_raster(pixels, path, opt.image_format == "u8" ? PixelType::kUint8 : PixelType::kFloat32);
    }
    outputs.push_back({name, sample.faces});
    kept_total += sample.faces.size();
    log += std::string(name) + ',' + std::to_string(seed) + ',' + format_double(sample.crop_window.x) + ',' +
           format_double(sample.crop_window.y) + ',' + format_double(sample.crop_window.w) + ',' +
           (sample.flipped ? "1" : "0") + ',' + std::to_string(sample.faces.size()) + '\n';
  }
  save_annotations(outputs, AnnotationFormat::kCanonical, (dir / "annotations.jsonl").string());
  write_text((dir / "samples.csv").string(), log);

  std::cout << "source: " << opt.image << " (" << source.width() << "x" << source.height() << ", "
            << entry.faces.size() << " faces)\n"
            << "samples: " << opt.count << "\n"
            << "faces kept: " << kept_total << "\n"
            << "output: " << opt.out_dir << "\n";
  return kOk;
}

}  // namespace

Command make_augment_command(CLI::App& root) {
  auto opt = std::make_shared<AugmentOptions>();
  Command cmd;
  cmd.app = root.add_subcommand("augment", "Random square crops with flip and colour distortion");
  add(cmd, "image", opt->image, "Source image (raster or PPM)")->required();
  add(cmd, "annotations", opt->annotations, "Annotation file holding the image's faces")->required();
  add(cmd, "seed", opt->seed, "Base seed; sample i uses a seed derived from (seed, i)");
  add(cmd, "count", opt->count, "Number of samples");
  add(cmd, "out-dir", opt->out_dir, "Output directory")->required();
  add(cmd, "min-scale", opt->min_scale, "Smallest crop side as a fraction of the short edge");
  add(cmd, "max-scale", opt->max_scale, "Largest crop side as a fraction of the short edge");
  add(cmd, "output-size", opt->output_size, "Sample size WxH");
  add(cmd, "flip-prob", opt->flip_prob, "Probability of a horizontal flip");
  add_flag(cmd, "no-photometric", opt->no_photometric, "Disable colour distortion");
  add(cmd, "image-format", opt->image_format, "ppm, u8 or f32 (raster)");
  cmd.run = [opt] { return run(*opt); };
  return cmd;
}

}  // namespace faceloc::cli
