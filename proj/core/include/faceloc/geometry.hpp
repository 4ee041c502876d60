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
#include <cmath>

namespace faceloc {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

// Axis-aligned box, top-left corner plus size, in pixels.
struct Box {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  static Box from_center(double cx, double cy, double w, double h) {
    return {cx - 0.5 * w, cy - 0.5 * h, w, h};
  }
  static Box from_corners(double x1, double y1, double x2, double y2) {
    return {x1, y1, x2 - x1, y2 - y1};
  }

  double cx() const { return x + 0.5 * w; }
  double cy() const { return y + 0.5 * h; }
  double x2() const { return x + w; }
  double y2() const { return y + h; }
  double area() const { return w * h; }

  friend bool operator==(const Box&, const Box&) = default;
};

// Five facial landmarks in image-viewer orientation:
// left eye, right eye, nose tip, left mouth corner, right mouth corner.
inline constexpr int kNumLandmarks = 5;
using Landmarks = std::array<Point2, kNumLandmarks>;

// Index permutation applied to landmarks under a horizontal mirror.
inline constexpr std::array<int, kNumLandmarks> kLandmarkFlipOrder = {1, 0, 2, 4, 3};

// Intersection-over-union. Zero for disjoint boxes and for any zero-area pair.
double iou(const Box& a, const Box& b);

double intersection_area(const Box& a, const Box& b);

}  // namespace faceloc
