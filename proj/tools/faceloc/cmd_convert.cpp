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

#include <filesystem>
#include <iostream>

#include "cli_util.hpp"
#include "faceloc/annotations.hpp"
#include "faceloc/image.hpp"

namespace faceloc::cli {
namespace {

struct ConvertAnnotationsOptions {
  std::string input;
  std::string output;
  std::string to = "canonical";
};

struct ConvertImageOptions {
  std::string input;
  std::string output;
  std::string format = "auto";
};

AnnotationFormat format_from_name(const std::string& name) {
  if (name == "benchmark") return AnnotationFormat::kBenchmark;
  if (name == "landmark") return AnnotationFormat::kLandmark;
  if (name == "canonical") return AnnotationFormat::kCanonical;
  throw UsageError("--to must be one of benchmark, landmark, canonical");
}

int run_annotations(const ConvertAnnotationsOptions& opt) {
  const AnnotationFormat to = format_from_name(opt.to);
  const std::string text = read_text(opt.input);
  const AnnotationFormat from = detect_annotation_format(text);
  const auto images = parse_annotations(text, from, opt.input);
  save_annotations(images, to, opt.output);
  std::size_t faces = 0;
  for (const auto& image : images) faces += image.faces.size();
  std::cout << "read " << images.size() << " images, " << faces << " faces (" << to_string(from) << ")\n"
            << "wrote " << opt.output << " (" << to_string(to) << ")\n";
  return kOk;
}

int run_image(const ConvertImageOptions& opt) {
  std::string f = opt.format;
  if (f == "auto") f = std::filesystem::path(opt.output).extension() == ".ppm" ? "ppm" : "f32";
  if (f != "ppm" && f != "u8" && f != "f32") throw UsageError("--format must be one of auto, f32, u8, ppm");
  const Image image = read_image(opt.input);
  if (f == "ppm") {
    write_ppm(image, opt.output);
  } else {
    write_raster(image, opt.output, f == "u8" ? PixelType::kUint8 : PixelType::kFloat32);
  }
  std::cout << "wrote " << opt.output << " (" << image.width() << "x" << image.height() << ", " << f << ")\n";
  return kOk;
}

}  // namespace

Command make_convert_annotations_command(CLI::App& root) {
  auto opt = std::make_shared<ConvertAnnotationsOptions>();
  Command cmd;
  cmd.app = root.add_subcommand("convert-annotations", "Convert between annotation formats");
  add(cmd, "input", opt->input, "Input annotation file (format detected)")->required();
  add(cmd, "output", opt->output, "Output file")->required();
  add(cmd, "to", opt->to, "benchmark, landmark or canonical");
  cmd.run = [opt] { return run_annotations(*opt); };
  return cmd;
}

Command make_convert_image_command(CLI::App& root) {
  auto opt = std::make_shared<ConvertImageOptions>();
  Command cmd;
  cmd.app = root.add_subcommand("convert-image", "Convert between raster and PPM images");
  add(cmd, "input", opt->input, "Input image (raster or PPM)")->required();
  add(cmd, "output", opt->output, "Output image")->required();
  add(cmd, "format", opt->format, "auto (ppm by extension, else f32), f32, u8 or ppm");
  cmd.run = [opt] { return run_image(*opt); };
  return cmd;
}

}  // namespace faceloc::cli
