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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "faceloc/geometry.hpp"

namespace faceloc {

struct ImageSize {
  int width = 0;
  int height = 0;

  friend bool operator==(const ImageSize&, const ImageSize&) = default;
};

// One feature-pyramid level: a grid of square anchors at a fixed stride with
// `scales_per_octave` sizes base_scale * octave_step^k, k = 0..scales_per_octave-1.
struct PyramidLevelSpec {
  std::string name;
  int stride = 0;
  double base_scale = 0.0;
  int scales_per_octave = 3;
  double octave_step = 1.2599210498948732;  // 2^(1/3)

  std::vector<double> scales() const;
};

// P2..P6 with strides 4..64 and base scales 16..256.
std::vector<PyramidLevelSpec> default_level_specs();

// Reads level specs from a JSON document of the form
//   {"levels": [{"name": "P2", "stride": 4, "base_scale": 16,
//                "scales_per_octave": 3, "octave_step": 1.2599}, ...]}
// Missing scales_per_octave/octave_step keys take the defaults above.
std::vector<PyramidLevelSpec> level_specs_from_json(const std::string& text);
std::vector<PyramidLevelSpec> load_level_specs(const std::string& path);

struct LevelRange {
  std::string name;
  int stride = 0;
  int grid_width = 0;
  int grid_height = 0;
  std::vector<double> scales;
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
};

// Anchors ordered level -> row-major cell -> scale.
struct AnchorSet {
  std::vector<Box> anchors;
  std::vector<LevelRange> levels;
  ImageSize input_size;

  std::size_t size() const { return anchors.size(); }
};

// Closed-form count: sum over levels of ceil(W/s) * ceil(H/s) * scales.
std::size_t anchor_count(ImageSize input_size, std::span<const PyramidLevelSpec> specs);

AnchorSet generate_anchors(ImageSize input_size, std::span<const PyramidLevelSpec> specs);

enum class AnchorLabel : std::int8_t { kNegative = 0, kPositive = 1, kIgnored = -1 };

struct MatchOptions {
  double positive_iou = 0.5;  // strictly greater -> positive
  double negative_iou = 0.3;  // strictly less -> negative
  // Each ground truth with no positive anchor claims its best-IoU anchor.
  bool force_best_match = true;
};

struct MatchResult {
  std::vector<AnchorLabel> labels;
  std::vector<int> gt_index;  // -1 unless positive
  std::vector<double> max_iou;

  std::size_t num_positive() const;
  std::size_t num_negative() const;
};

MatchResult match_anchors(const AnchorSet& anchors, std::span<const Box> gt_boxes,
                          const MatchOptions& options = {});
MatchResult match_anchors(std::span<const Box> anchors, std::span<const Box> gt_boxes,
                          const MatchOptions& options = {});

// Online hard example mining: the highest-loss negatives, at most
// floor(ratio * #positives) of them (one when there are no positives).
// Ties go to the lower anchor index. Returned indices are ascending.
std::vector<std::size_t> select_hard_negatives(const MatchResult& match,
                                               std::span<const double> per_anchor_cls_loss,
                                               double ratio = 3.0);

}  // namespace faceloc
