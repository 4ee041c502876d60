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
#include <functional>
#include <span>
#include <vector>

#include "faceloc/anchors.hpp"
#include "faceloc/image.hpp"
#include "faceloc/mesh.hpp"
#include "faceloc/sparse.hpp"

namespace faceloc {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Vec3&, const Vec3&) = default;
};

// Pinhole camera looking from `position` towards `look_at`, world +Y up,
// principal point at the image centre, focal length in pixels.
struct CameraParams {
  Vec3 position{0.0, 0.0, 3.0};
  Vec3 look_at{0.0, 0.0, 0.0};
  double focal = 100.0;

  void validate() const;
  std::array<double, 7> as_array() const;
  static CameraParams from_array(std::span<const double, 7> values);
};

// Point light plus ambient term; colours in [0, 1].
struct IlluminationParams {
  Vec3 light_position{0.0, 0.0, 3.0};
  std::array<double, 3> light_color{0.0, 0.0, 0.0};
  std::array<double, 3> ambient{1.0, 1.0, 1.0};

  void validate() const;
  std::array<double, 9> as_array() const;
  static IlluminationParams from_array(std::span<const double, 9> values);
};

struct ProjectedVertex {
  double x = 0.0;  // pixels, left to right
  double y = 0.0;  // pixels, top to bottom
  double depth = 0.0;  // distance along the viewing direction
};

// Screen-space projection of the first three columns of `vertices`.
std::vector<ProjectedVertex> project_vertices(const Matrix& vertices, const CameraParams& camera,
                                              ImageSize image_size);

// Rasterises the coloured mesh. Pixel (i, j) samples the continuous point
// (i + 0.5, j + 0.5); a pixel is covered when its centre lies inside or on a
// projected triangle. Colour is the screen-space barycentric blend of vertex
// colours times (ambient + light * max(0, n.l)) with a per-face normal facing
// the camera, clamped to [0, 1]. Nearest depth wins; uncovered pixels are black.
// Triangles that are degenerate on screen or touch the camera plane are skipped.
Image render(const Matrix& vertices, std::span<const Triangle> triangles, const CameraParams& camera,
             const IlluminationParams& illumination, ImageSize image_size);

// Mean over pixels of the per-pixel L1 distance across the three channels.
double dense_regression_loss(const Image& rendered, const Image& crop);

// Central differences (f(p + eps e_i) - f(p - eps e_i)) / (2 eps).
std::vector<double> finite_diff_grad(const std::function<double(std::span<const double>)>& loss,
                                     std::span<const double> params, double eps);

}  // namespace faceloc
