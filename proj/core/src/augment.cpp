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

#include "faceloc/augment.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "faceloc/error.hpp"

namespace faceloc {
namespace {

// 53 random bits in [0, 1).
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double draw(std::mt19937_64& rng, const std::array<double, 2>& range) {
  return range[0] + uniform01(rng) * (range[1] - range[0]);
}

Point2 source_to_window(const Point2& p, const Box& window, ImageSize out) {
  return {(p.x - window.x) * out.width / window.w, (p.y - window.y) * out.height / window.h};
}

Point2 window_to_source(const Point2& p, const Box& window, ImageSize out) {
  return {window.x + p.x * window.w / out.width, window.y + p.y * window.h / out.height};
}

}  // namespace

bool centre_in_window(const Box& box, const Box& window) {
  const double cx = box.cx();
  const double cy = box.cy();
  return cx >= window.x && cx < window.x2() && cy >= window.y && cy < window.y2();
}

AugmentedSample crop_to_window(std::span<const FaceAnnotation> faces, const Box& window, ImageSize output) {
  if (!(window.w > 0.0) || !(window.h > 0.0)) throw InvalidArgument("crop window must have positive size");
  if (output.width <= 0 || output.height <= 0) throw InvalidArgument("output size must be positive");
  AugmentedSample sample;
  sample.crop_window = window;
  sample.output_size = output;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const auto& face = faces[i];
    if (!centre_in_window(face.box, window)) continue;
    FaceAnnotation mapped = face;
    const double x1 = std::max(face.box.x, window.x);
    const double y1 = std::max(face.box.y, window.y);
    const double x2 = std::min(face.box.x2(), window.x2());
    const double y2 = std::min(face.box.y2(), window.y2());
    const Point2 a = source_to_window({x1, y1}, window, output);
    const Point2 b = source_to_window({x2, y2}, window, output);
    mapped.box = Box::from_corners(a.x, a.y, b.x, b.y);
    if (mapped.landmarks) {
      for (auto& lm : *mapped.landmarks) lm.point = source_to_window(lm.point, window, output);
    }
    sample.faces.push_back(mapped);
    sample.source_index.push_back(i);
  }
  return sample;
}

Box draw_square_window(ImageSize image_size, std::uint64_t seed, const CropOptions& options) {
  const int short_edge = std::min(image_size.width, image_size.height);
  if (short_edge <= 0) throw InvalidArgument("image short edge must be positive");
  if (!(options.min_scale > 0.0) || options.max_scale < options.min_scale || options.max_scale > 1.0) {
    throw InvalidArgument("crop scale range must satisfy 0 < min <= max <= 1");
  }
  std::mt19937_64 rng(seed);
  const double side = short_edge * draw(rng, {options.min_scale, options.max_scale});
  const double x = draw(rng, {0.0, image_size.width - side});
  const double y = draw(rng, {0.0, image_size.height - side});
  return {x, y, side, side};
}

AugmentedSample random_square_crop(ImageSize image_size, std::span<const FaceAnnotation> faces,
                                   std::uint64_t seed, const CropOptions& options) {
  auto sample = crop_to_window(faces, draw_square_window(image_size, seed, options), options.output);
  sample.seed = seed;
  return sample;
}

AugmentedSample horizontal_flip(const AugmentedSample& sample) {
  AugmentedSample out = sample;
  const double w = sample.output_size.width;
  for (auto& face : out.faces) {
    face.box.x = w - face.box.x - face.box.w;
    if (face.landmarks) {
      const auto original = *face.landmarks;
      for (int k = 0; k < kNumLandmarks; ++k) {
        auto lm = original[kLandmarkFlipOrder[k]];
        lm.point.x = w - lm.point.x;
        (*face.landmarks)[k] = lm;
      }
    }
  }
  out.flipped = !sample.flipped;
  return out;
}

Point2 to_source(const Point2& p, const AugmentedSample& sample) {
  Point2 q = p;
  if (sample.flipped) q.x = sample.output_size.width - q.x;
  return window_to_source(q, sample.crop_window, sample.output_size);
}

Box to_source(const Box& b, const AugmentedSample& sample) {
  Box q = b;
  if (sample.flipped) q.x = sample.output_size.width - q.x - q.w;
  const Point2 a = window_to_source({q.x, q.y}, sample.crop_window, sample.output_size);
  const Point2 c = window_to_source({q.x2(), q.y2()}, sample.crop_window, sample.output_size);
  return Box::from_corners(a.x, a.y, c.x, c.y);
}

Point2 to_output(const Point2& p, const AugmentedSample& sample) {
  Point2 q = source_to_window(p, sample.crop_window, sample.output_size);
  if (sample.flipped) q.x = sample.output_size.width - q.x;
  return q;
}

Box to_output(const Box& b, const AugmentedSample& sample) {
  const Point2 a = source_to_window({b.x, b.y}, sample.crop_window, sample.output_size);
  const Point2 c = source_to_window({b.x2(), b.y2()}, sample.crop_window, sample.output_size);
  Box q = Box::from_corners(a.x, a.y, c.x, c.y);
  if (sample.flipped) q.x = sample.output_size.width - q.x - q.w;
  return q;
}

Image crop_and_resize(const Image& image, const Box& window, ImageSize output) {
  if (image.width() <= 0 || image.height() <= 0) throw InvalidArgument("source image is empty");
  if (output.width <= 0 || output.height <= 0) throw InvalidArgument("output size must be positive");
  Image out(output.width, output.height);
  const double sx = window.w / output.width;
  const double sy = window.h / output.height;
  for (int j = 0; j < output.height; ++j) {
    const double y = std::clamp(window.y + (j + 0.5) * sy - 0.5, 0.0, image.height() - 1.0);
    const int y0 = static_cast<int>(std::floor(y));
    const int y1 = std::min(y0 + 1, image.height() - 1);
    const double fy = y - y0;
    for (int i = 0; i < output.width; ++i) {
      const double x = std::clamp(window.x + (i + 0.5) * sx - 0.5, 0.0, image.width() - 1.0);
      const int x0 = static_cast<int>(std::floor(x));
      const int x1 = std::min(x0 + 1, image.width() - 1);
      const double fx = x - x0;
      for (int c = 0; c < 3; ++c) {
        const double top = image.at(x0, y0, c) * (1.0 - fx) + image.at(x1, y0, c) * fx;
        const double bottom = image.at(x0, y1, c) * (1.0 - fx) + image.at(x1, y1, c) * fx;
        out.at(i, j, c) = top * (1.0 - fy) + bottom * fy;
      }
    }
  }
  return out;
}

Image mirror_image(const Image& image) {
  Image out(image.width(), image.height());
  for (int j = 0; j < image.height(); ++j) {
    for (int i = 0; i < image.width(); ++i) {
      for (int c = 0; c < 3; ++c) out.at(image.width() - 1 - i, j, c) = image.at(i, j, c);
    }
  }
  return out;
}

Image render_sample(const Image& source, const AugmentedSample& sample) {
  auto out = crop_and_resize(source, sample.crop_window, sample.output_size);
  return sample.flipped ? mirror_image(out) : out;
}

Image photometric_distort(const Image& image, std::uint64_t seed, const PhotometricConfig& config) {
  for (const auto* r : {&config.brightness, &config.contrast, &config.saturation}) {
    if ((*r)[1] < (*r)[0]) throw InvalidArgument("photometric range must be [low, high] with low <= high");
  }
  std::mt19937_64 rng(seed);
  const double brightness = draw(rng, config.brightness);
  const double contrast = draw(rng, config.contrast);
  const double saturation = draw(rng, config.saturation);

  Image out = image;
  for (int j = 0; j < out.height(); ++j) {
    for (int i = 0; i < out.width(); ++i) {
      double rgb[3];
      for (int c = 0; c < 3; ++c) rgb[c] = (out.at(i, j, c) + brightness) * contrast;
      const double luma = 0.299 * rgb[0] + 0.587 * rgb[1] + 0.114 * rgb[2];
      for (int c = 0; c < 3; ++c) {
        const double v = saturation == 1.0 ? rgb[c] : luma + (rgb[c] - luma) * saturation;
        out.at(i, j, c) = std::clamp(v, 0.0, 1.0);
      }
    }
  }
  return out;
}

}  // namespace faceloc
