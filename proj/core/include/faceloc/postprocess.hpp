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

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "faceloc/anchors.hpp"
#include "faceloc/geometry.hpp"

namespace faceloc {

struct Detection {
  Box box;
  double score = 0.0;
  std::optional<Landmarks> landmarks;
  std::string source;  // test-time configuration tag, may be empty
};

inline constexpr double kDefaultVoteIou = 0.4;

// Greedy suppression in descending score order (ties: lower input index
// first). A detection is dropped when IoU >= iou_thresh with a kept one.
std::vector<Detection> nms(std::span<const Detection> dets, double iou_thresh);

// Score-weighted average of the corners of every pool member with
// IoU >= iou_thresh against `kept`, plus `kept` itself when it is not in the
// pool. Score, landmarks and tag are those of `kept`.
Detection box_voting(const Detection& kept, std::span<const Detection> pool, double iou_thresh);

// One test-time configuration: the image was resized by `scale` and
// optionally mirrored before detection.
struct TestConfig {
  std::string tag;
  double scale = 1.0;
  bool flipped = false;
};

// Short-edge targets used for multi-scale testing.
std::vector<double> default_test_short_edges();
double scale_for_short_edge(ImageSize original, double short_edge);
// Builds tags "s<edge>" and "s<edge>_flip" for each short edge.
std::vector<TestConfig> default_test_configs(ImageSize original);

// Maps a detection from a configuration frame back to the original image.
Detection to_original_frame(const Detection& det, const TestConfig& config, ImageSize original);
// Inverse of to_original_frame.
Detection to_config_frame(const Detection& det, const TestConfig& config, ImageSize original);

// Maps every configuration's detections back to the original frame, pools
// them, applies NMS at iou_vote and replaces each survivor by its vote over
// the whole pool.
std::vector<Detection> multiscale_union(const std::map<std::string, std::vector<Detection>>& per_config,
                                        std::span<const TestConfig> configs, ImageSize original,
                                        double iou_vote = kDefaultVoteIou);

// Line record: image_id x y w h score [10 landmark coordinates] [tag].
struct DetectionRecord {
  std::string image_id;
  Detection detection;
};

std::string format_detection_record(const DetectionRecord& record);
DetectionRecord parse_detection_record(const std::string& line, const std::string& source = {},
                                       std::size_t line_number = 0);
// Blank lines and lines starting with '#' are skipped.
std::vector<DetectionRecord> read_detection_records(const std::string& path);
void write_detection_records(std::span<const DetectionRecord> records, const std::string& path);

}  // namespace faceloc
