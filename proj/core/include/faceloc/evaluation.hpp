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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "faceloc/geometry.hpp"
#include "faceloc/postprocess.hpp"

namespace faceloc {

enum class MatchLabel { kFalsePositive = 0, kTruePositive = 1, kIgnored = 2 };

struct GroundTruth {
  Box box;
  bool ignore = false;  // matching it neither rewards nor penalises
};

struct MatchOutcome {
  std::vector<MatchLabel> labels;
  std::vector<int> gt_index;  // matched ground truth, -1 for false positives
};

// Greedy matching of detections ranked by descending score. A detection takes
// the highest-IoU unmatched non-ignored ground truth with IoU >= iou_thresh
// (ties: lower index). Failing that, overlapping an ignore region at
// iou_thresh marks it kIgnored; otherwise it is a false positive.
MatchOutcome match_detections(std::span<const Box> ranked_dets, std::span<const GroundTruth> gts,
                              double iou_thresh);
MatchOutcome match_detections(std::span<const Detection> ranked_dets, std::span<const GroundTruth> gts,
                              double iou_thresh);

struct PrPoint {
  double recall = 0.0;
  double precision = 0.0;
};

// One point per non-ignored detection, in rank order.
std::vector<PrPoint> precision_recall_curve(std::span<const MatchLabel> ranked, std::size_t num_gt);

// All-points interpolated AP: area under the monotone precision envelope.
// With num_gt == 0 the result is 1 when no detection counts, else 0.
double average_precision(std::span<const MatchLabel> ranked, std::size_t num_gt);

struct ImageEval {
  std::string image_id;
  std::vector<Detection> detections;
  std::vector<GroundTruth> ground_truth;
};

struct RankedMatches {
  std::vector<double> scores;
  std::vector<MatchLabel> labels;
  std::size_t num_gt = 0;
};

// Matches every image at iou_thresh and merges all detections into one list
// ranked by score (ties: image order, then detection order).
RankedMatches rank_matches(std::span<const ImageEval> images, double iou_thresh);
double average_precision_at(std::span<const ImageEval> images, double iou_thresh);

struct MapSweep {
  std::vector<double> thresholds;
  std::vector<double> ap;
  double mean = 0.0;
};

// IoU thresholds 0.50, 0.55, ..., 0.95.
std::vector<double> map_iou_thresholds();
MapSweep map_sweep(std::span<const ImageEval> images);

// Mean distance over visible landmarks divided by sqrt(box_w * box_h).
double nme(const Landmarks& predicted, const Landmarks& truth, std::span<const bool, kNumLandmarks> visible,
           double box_width, double box_height);

struct CedPoint {
  double threshold = 0.0;
  double fraction = 0.0;  // share of faces with NME <= threshold
};

std::vector<CedPoint> ced_curve(std::span<const double> nme_values, std::span<const double> thresholds);
// Share of faces with NME > threshold.
double failure_rate(std::span<const double> nme_values, double threshold = 0.10);
// 0, step, 2 step, ..., max inclusive.
std::vector<double> ced_thresholds(double max_threshold = 0.2, std::size_t steps = 200);

struct EvalReport {
  std::size_t num_images = 0;
  std::size_t num_detections = 0;
  std::size_t num_ground_truth = 0;
  double iou_threshold = 0.5;
  std::vector<PrPoint> pr_curve;
  double ap = 0.0;
  std::optional<MapSweep> map;
  std::map<std::string, double> subset_ap;  // e.g. easy / medium / hard
  std::vector<double> nme_per_face;
  std::vector<CedPoint> ced;
  std::optional<double> failure_rate;
  double failure_threshold = 0.10;
};

// Report writers: human-readable summary, key=value lines, CSV curves and
// standalone SVG plots.
std::string format_summary(const EvalReport& report);
std::string format_key_values(const EvalReport& report);
std::string format_pr_csv(const EvalReport& report);
std::string format_ced_csv(const EvalReport& report);
std::string format_curve_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                             std::span<const std::array<double, 2>> points, double x_max, double y_max);

}  // namespace faceloc
