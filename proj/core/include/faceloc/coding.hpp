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
#include <span>

#include "faceloc/anchors.hpp"
#include "faceloc/geometry.hpp"

namespace faceloc {

// Box regression target relative to an anchor: centre offsets normalised by
// the anchor size, log size ratios.
struct BoxDelta {
  double tx = 0.0;
  double ty = 0.0;
  double tw = 0.0;
  double th = 0.0;

  std::array<double, 4> as_array() const { return {tx, ty, tw, th}; }
};

// Landmark target: per point (px - ax) / aw, (py - ay) / ah. No log scaling.
struct LandmarkDelta {
  std::array<Point2, kNumLandmarks> offsets{};

  std::array<double, 2 * kNumLandmarks> as_array() const;
};

BoxDelta encode_box(const Box& gt, const Box& anchor);
Box decode_box(const BoxDelta& delta, const Box& anchor);

LandmarkDelta encode_landmarks(const Landmarks& points, const Box& anchor);
Landmarks decode_landmarks(const LandmarkDelta& delta, const Box& anchor);

// Sum over elements of 0.5 x^2 (|x| < 1) or |x| - 0.5.
double smooth_l1(double x);
double smooth_l1(std::span<const double> x);

// -log softmax(logits)[label] for the two-class face / background problem.
double softmax_cls_loss(std::array<double, 2> logits, int label);

// Smooth-L1 box loss between a predicted and a target delta.
double box_regression_loss(const BoxDelta& predicted, const BoxDelta& target);

// Smooth-L1 landmark loss averaged over visible points; 0 when none is visible.
double landmark_regression_loss(const LandmarkDelta& predicted, const LandmarkDelta& target,
                                std::span<const bool, kNumLandmarks> visible);

struct MultiTaskLossParams {
  double lambda_box = 0.25;
  double lambda_pts = 0.1;
  double lambda_pixel = 0.01;
};

struct LossBreakdown {
  double cls = 0.0;
  double box = 0.0;
  double pts = 0.0;
  double pixel = 0.0;
  double total = 0.0;
};

// Per-anchor loss. Negative anchors keep only the classification term;
// ignored anchors are rejected.
LossBreakdown multi_task_loss(AnchorLabel label, double cls, double box, double pts, double pixel,
                              const MultiTaskLossParams& params = {});

enum class Reduction { kMean, kSum };

// Per-anchor component losses for a batch. `pts` and `pixel` may be empty,
// in which case those terms are zero.
struct AnchorLosses {
  std::span<const AnchorLabel> labels;
  std::span<const double> cls;
  std::span<const double> box;
  std::span<const double> pts;
  std::span<const double> pixel;
};

// Batch reduction: cls over positives plus the selected negatives; box, pts
// and pixel over positives only. kMean divides each term by its own count.
LossBreakdown reduce_batch_loss(const AnchorLosses& losses,
                                std::span<const std::size_t> selected_negatives,
                                const MultiTaskLossParams& params = {},
                                Reduction reduction = Reduction::kMean);

}  // namespace faceloc
