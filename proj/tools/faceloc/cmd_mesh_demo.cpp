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
#include "faceloc/decoder.hpp"
#include "faceloc/error.hpp"
#include "faceloc/image.hpp"
#include "faceloc/render.hpp"

namespace faceloc::cli {
namespace {

struct MeshDemoOptions {
  std::string decoder;
  std::string latent;
  std::string size = "128x128";
  std::string camera_position = "0,0,3";
  std::string look_at = "0,0,0";
  double focal = 100.0;
  std::string light_position = "0,0,3";
  std::string light_color = "0,0,0";
  std::string ambient = "1,1,1";
  std::string output;
  std::string format = "auto";
  std::string target;
};

void write_output(const Image& image, const std::string& path, const std::string& format) {
  std::string f = format;
  if (f == "auto") f = std::filesystem::path(path).extension() == ".ppm" ? "ppm" : "f32";
  if (f == "ppm") {
    write_ppm(image, path);
  } else if (f == "u8") {
    write_raster(image, path, PixelType::kUint8);
  } else if (f == "f32") {
    write_raster(image, path, PixelType::kFloat32);
  } else {
    throw UsageError("--format must be one of auto, f32, u8, ppm");
  }
}

int run(const MeshDemoOptions& opt) {
  const ImageSize size = parse_size(opt.size, "size");
  CameraParams camera{parse_vec3(opt.camera_position, "camera-position"), parse_vec3(opt.look_at, "look-at"),
                      opt.focal};
  IlluminationParams light{parse_vec3(opt.light_position, "light-position"), parse_rgb(opt.light_color, "light-color"),
                           parse_rgb(opt.ambient, "ambient")};
  try {
    camera.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(std::string("camera: ") + e.what());
  }
  light.validate();
  if (opt.format != "auto" && opt.format != "f32" && opt.format != "u8" && opt.format != "ppm") {
    throw UsageError("--format must be one of auto, f32, u8, ppm");
  }

  const MeshDecoder decoder = load_decoder(opt.decoder);
  const std::vector<double> latent = load_latent(opt.latent);
  if (latent.size() != decoder.latent_dim) {
    throw ConfigError("latent has " + std::to_string(latent.size()) + " entries, decoder expects " +
                      std::to_string(decoder.latent_dim));
  }
  const Matrix vertices = decode(latent, decoder);
  const Image image = render(vertices, decoder.output_triangles(), camera, light, size);
  write_output(image, opt.output, opt.format);

  std::size_t covered = 0;
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      if (image.at(x, y, 0) != 0.0 || image.at(x, y, 1) != 0.0 || image.at(x, y, 2) != 0.0) ++covered;
    }
  }
  std::cout << "vertices: " << vertices.rows() << "\n"
            << "triangles: " << decoder.output_triangles().size() << "\n"
            << "image: " << size.width << "x" << size.height << "\n"
            << "non-background pixels: " << covered << "\n"
            << "output: " << opt.output << "\n";
  if (!opt.target.empty()) {
    // Scored on the image as stored, so a render compared with its own saved
    // output gives exactly zero.
    const Image stored = read_image(opt.output);
    const Image target = read_image(opt.target);
    std::cout << "dense_loss=" << format_double(dense_regression_loss(stored, target)) << "\n";
  }
  return kOk;
}

}  // namespace

Command make_mesh_demo_command(CLI::App& root) {
  auto opt = std::make_shared<MeshDemoOptions>();
  Command cmd;
  cmd.app = root.add_subcommand("mesh-demo", "Decode a latent code to a coloured mesh and render it");
  add(cmd, "decoder", opt->decoder, "Decoder JSON file")->required();
  add(cmd, "latent", opt->latent, "Latent code: whitespace-separated numbers or a JSON array")->required();
  add(cmd, "size", opt->size, "Output image size WxH");
  add(cmd, "camera-position", opt->camera_position, "Camera position x,y,z");
  add(cmd, "look-at", opt->look_at, "Point the camera looks at x,y,z");
  add(cmd, "focal", opt->focal, "Focal length in pixels");
  add(cmd, "light-position", opt->light_position, "Point light position x,y,z");
  add(cmd, "light-color", opt->light_color, "Point light colour r,g,b in [0,1]");
  add(cmd, "ambient", opt->ambient, "Ambient colour r,g,b in [0,1]");
  add(cmd, "output", opt->output, "Output image path")->required();
  add(cmd, "format", opt->format, "auto (ppm by extension, else f32), f32, u8 or ppm");
  add(cmd, "target", opt->target, "Print the dense loss of the stored output against this image");
  cmd.run = [opt] { return run(*opt); };
  return cmd;
}

}  // namespace faceloc::cli
