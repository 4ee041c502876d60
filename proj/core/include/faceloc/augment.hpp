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

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "faceloc/anchors.hpp"
#include "faceloc/annotations.hpp"
#include "faceloc/image.hpp"

namespace faceloc {

struct CropOptions {
  double min_scale = 0.3;  // of the short edge
  double max_scale = 1.0;
  ImageSize output{640, 640};
};

// A square crop of a source image resized to `output_size`, with the faces
// it retained expressed in output coordinates.
struct AugmentedSample {
  Box crop_window;  // source coordinates, square
  ImageSize output_size;
  std::vector<FaceAnnotation> faces;
  std::vector<std::size_t> source_index;  // index of each face in the input list
  bool flipped = false;
  std::uint64_t seed = 0;

  friend bool operator==(const AugmentedSample&, const AugmentedSample&) = default;
};

// Half-open test: window.x <= cx < window.x2 and likewise for y.
bool centre_in_window(const Box& box, const Box& window);

// Deterministic core of the crop: keeps faces whose centre lies in `window`,
// clips their boxes to it and maps everything to output pixels.
AugmentedSample crop_to_window(std::span<const FaceAnnotation> faces, const Box& window, ImageSize output);

// Side uniform in [min_scale, max_scale] * short edge, position uniform with
// the window inside the image; reproducible from the seed.
Box draw_square_window(ImageSize image_size, std::uint64_t seed, const CropOptions& options = {});
AugmentedSample random_square_crop(ImageSize image_size, std::span<const FaceAnnotation> faces,
                                   std::uint64_t seed, const CropOptions& options = {});

// Mirrors boxes (x -> W - x - w) and landmarks (x -> W - x) in the output
// frame and swaps left/right landmark identities.
AugmentedSample horizontal_flip(const AugmentedSample& sample);

// Maps output-frame geometry back to the source image (undoing the flip).
Point2 to_source(const Point2& p, const AugmentedSample& sample);
Box to_source(const Box& b, const AugmentedSample& sample);
Point2 to_output(const Point2& p, const AugmentedSample& sample);
Box to_output(const Box& b, const AugmentedSample& sample);

// Bilinear resample of `window` (source coordinates) to `output` pixels;
// samples outside the image are clamped to the border.
Image crop_and_resize(const Image& image, const Box& window, ImageSize output);
Image mirror_image(const Image& image);
// Pixels of the augmented sample: crop, resize and optional mirror.
Image render_sample(const Image& source, const AugmentedSample& sample);

struct PhotometricConfig {
  std::array<double, 2> brightness{-32.0 / 255.0, 32.0 / 255.0};  // additive
  std::array<double, 2> contrast{0.5, 1.5};                        // multiplicative
  std::array<double, 2> saturation{0.5, 1.5};                      // blend with luma

  static PhotometricConfig identity() { return {{0.0, 0.0}, {1.0, 1.0}, {1.0, 1.0}}; }
};

// Brightness, contrast, saturation in that order, each factor drawn from its
// range; result clamped to [0, 1].
Image photometric_distort(const Image& image, std::uint64_t seed, const PhotometricConfig& config = {});

}  // namespace faceloc
