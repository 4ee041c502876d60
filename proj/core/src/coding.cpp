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

#include "faceloc/coding.hpp"

#include <cmath>
#include <string>

#include "faceloc/error.hpp"

namespace faceloc {
namespace {

void require_positive_size(const Box& box, const char* what) {
  if (!(box.w > 0.0) || !(box.h > 0.0)) {
    throw InvalidArgument(std::string(what) + " must have positive width and height");
  }
}

}  // namespace

std::array<double, 2 * kNumLandmarks> LandmarkDelta::as_array() const {
  std::array<double, 2 * kNumLandmarks> out{};
  for (int i = 0; i < kNumLandmarks; ++i) {
    out[2 * i] = offsets[i].x;
    out[2 * i + 1] = offsets[i].y;
  }
  return out;
}

BoxDelta encode_box(const Box& gt, const Box& anchor) {
  require_positive_size(anchor, "anchor");
  require_positive_size(gt, "ground-truth box");
  return {(gt.cx() - anchor.cx()) / anchor.w, (gt.cy() - anchor.cy()) / anchor.h,
          std::log(gt.w / anchor.w), std::log(gt.h / anchor.h)};
}

Box decode_box(const BoxDelta& delta, const Box& anchor) {
  const double cx = anchor.cx() + delta.tx * anchor.w;
  const double cy = anchor.cy() + delta.ty * anchor.h;
  return Box::from_center(cx, cy, anchor.w * std::exp(delta.tw), anchor.h * std::exp(delta.th));
}

LandmarkDelta encode_landmarks(const Landmarks& points, const Box& anchor) {
  require_positive_size(anchor, "anchor");
  LandmarkDelta delta;
  const double ax = anchor.cx();
  const double ay = anchor.cy();
  for (int i = 0; i < kNumLandmarks; ++i) {
    delta.offsets[i] = {(points[i].x - ax) / anchor.w, (points[i].y - ay) / anchor.h};
  }
  return delta;
}

Landmarks decode_landmarks(const LandmarkDelta& delta, const Box& anchor) {
  require_positive_size(anchor, "anchor");
  Landmarks points{};
  const double ax = anchor.cx();
  const double ay = anchor.cy();
  for (int i = 0; i < kNumLandmarks; ++i) {
    points[i] = {ax + delta.offsets[i].x * anchor.w, ay + delta.offsets[i].y * anchor.h};
  }
  return points;
}

double smooth_l1(double x) {
  const double a = std::abs(x);
  return a < 1.0 ? 0.5 * x * x : a - 0.5;
}

double smooth_l1(std::span<const double> x) {
  double sum = 0.0;
  for (double v : x) sum += smooth_l1(v);
  return sum;
}

double softmax_cls_loss(std::array<double, 2> logits, int label) {
  if (!std::isfinite(logits[0]) || !std::isfinite(logits[1])) {
    throw InvalidArgument("classification logits must be finite");
  }
  if (label != 0 && label != 1) throw InvalidArgument("class label must be 0 or 1");
  // log(1 + exp(other - own)), evaluated without overflow or cancellation.
  const double margin = logits[1 - label] - logits[label];
  if (margin > 0.0) return margin + std::log1p(std::exp(-margin));
  return std::log1p(std::exp(margin));
}

double box_regression_loss(const BoxDelta& predicted, const BoxDelta& target) {
  const auto p = predicted.as_array();
  const auto t = target.as_array();
  std::array<double, 4> diff{};
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = p[i] - t[i];
  return smooth_l1(diff);
}

double landmark_regression_loss(const LandmarkDelta& predicted, const LandmarkDelta& target,
                                std::span<const bool, kNumLandmarks> visible) {
  double sum = 0.0;
  int count = 0;
  for (int i = 0; i < kNumLandmarks; ++i) {
    if (!visible[i]) continue;
    sum += smooth_l1(predicted.offsets[i].x - target.offsets[i].x) +
           smooth_l1(predicted.offsets[i].y - target.offsets[i].y);
    ++count;
  }
  return count == 0 ? 0.0 : sum / count;
}

LossBreakdown multi_task_loss(AnchorLabel label, double cls, double box, double pts, double pixel,
                              const MultiTaskLossParams& params) {
  if (label == AnchorLabel::kIgnored) {
    throw InvalidArgument("ignored anchors do not contribute to the loss");
  }
  if (cls < 0.0 || box < 0.0 || pts < 0.0 || pixel < 0.0) {
    throw InvalidArgument("component losses must be non-negative");
  }
  LossBreakdown out;
  out.cls = cls;
  if (label == AnchorLabel::kPositive) {
    out.box = box;
    out.pts = pts;
    out.pixel = pixel;
  }
  out.total = out.cls + params.lambda_box * out.box + params.lambda_pts * out.pts +
              params.lambda_pixel * out.pixel;
  return out;
}

LossBreakdown reduce_batch_loss(const AnchorLosses& losses,
                                std::span<const std::size_t> selected_negatives,
                                const MultiTaskLossParams& params, Reduction reduction) {
  const std::size_t n = losses.labels.size();
  auto check = [n](std::span<const double> v, const char* name, bool optional) {
    if (v.size() != n && !(optional && v.empty())) {
      throw InvalidArgument(std::string(name) + " loss length does not match anchor count");
    }
  };
  check(losses.cls, "cls", false);
  check(losses.box, "box", false);
  check(losses.pts, "pts", true);
  check(losses.pixel, "pixel", true);

  LossBreakdown out;
  std::size_t positives = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (losses.labels[i] != AnchorLabel::kPositive) continue;
    ++positives;
    out.cls += losses.cls[i];
    out.box += losses.box[i];
    if (!losses.pts.empty()) out.pts += losses.pts[i];
    if (!losses.pixel.empty()) out.pixel += losses.pixel[i];
  }
  for (std::size_t idx : selected_negatives) {
    if (idx >= n) throw InvalidArgument("selected negative index out of range");
    if (losses.labels[idx] != AnchorLabel::kNegative) {
      throw InvalidArgument("selected anchor " + std::to_string(idx) + " is not negative");
    }
    out.cls += losses.cls[idx];
  }
  if (reduction == Reduction::kMean) {
    const std::size_t cls_count = positives + selected_negatives.size();
    if (cls_count > 0) out.cls /= static_cast<double>(cls_count);
    if (positives > 0) {
      out.box /= static_cast<double>(positives);
      out.pts /= static_cast<double>(positives);
      out.pixel /= static_cast<double>(positives);
    }
  }
  out.total = out.cls + params.lambda_box * out.box + params.lambda_pts * out.pts +
              params.lambda_pixel * out.pixel;
  return out;
}

}  // namespace faceloc
