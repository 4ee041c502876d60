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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "faceloc/geometry.hpp"

namespace faceloc {

struct LandmarkPoint {
  Point2 point;
  bool visible = true;

  friend bool operator==(const LandmarkPoint&, const LandmarkPoint&) = default;
};

using LandmarkAnnotation = std::array<LandmarkPoint, kNumLandmarks>;

// Attribute slots in benchmark order.
enum FaceAttribute { kBlur = 0, kExpression, kIllumination, kInvalid, kOcclusion, kPose, kNumAttributes };

// Annotation quality levels: 1-2 dense-landmark grade, 3-4 five-landmark
// grade, 5 box only.
inline constexpr int kBoxOnlyQuality = 5;
inline constexpr int kDefaultLandmarkQuality = 4;

struct FaceAnnotation {
  Box box;
  std::optional<LandmarkAnnotation> landmarks;
  int quality_level = kBoxOnlyQuality;
  std::array<int, kNumAttributes> attributes{};
  int difficulty = -1;  // 0 easy, 1 medium, 2 hard, -1 unknown

  bool invalid() const { return attributes[kInvalid] != 0; }

  friend bool operator==(const FaceAnnotation&, const FaceAnnotation&) = default;
};

struct ImageAnnotations {
  std::string image;
  std::vector<FaceAnnotation> faces;

  friend bool operator==(const ImageAnnotations&, const ImageAnnotations&) = default;
};

enum class AnnotationFormat {
  kBenchmark,  // path / count / "x y w h blur expr illum invalid occl pose [difficulty]"
  kLandmark,   // "# path" / "x y w h (lx ly v) x5 [quality]"
  kCanonical,  // one JSON object per line
};

std::string to_string(AnnotationFormat format);

// Throws FormatError when the text matches none of the formats.
AnnotationFormat detect_annotation_format(const std::string& text);

// Throws ParseError with the 1-based line number of the offending line.
std::vector<ImageAnnotations> parse_annotations(const std::string& text, const std::string& source = {});
std::vector<ImageAnnotations> parse_annotations(const std::string& text, AnnotationFormat format,
                                                const std::string& source = {});
std::vector<ImageAnnotations> load_annotations(const std::string& path);

std::string write_annotations(std::span<const ImageAnnotations> images, AnnotationFormat format);
void save_annotations(std::span<const ImageAnnotations> images, AnnotationFormat format, const std::string& path);

// Checks quality range and landmark/quality consistency.
void validate_annotation(const FaceAnnotation& face);

}  // namespace faceloc
