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

#include "faceloc/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "faceloc/error.hpp"

namespace faceloc {

MatchOutcome match_detections(std::span<const Box> ranked_dets, std::span<const GroundTruth> gts,
                              double iou_thresh) {
  MatchOutcome out;
  out.labels.assign(ranked_dets.size(), MatchLabel::kFalsePositive);
  out.gt_index.assign(ranked_dets.size(), -1);
  std::vector<bool> taken(gts.size(), false);
  for (std::size_t d = 0; d < ranked_dets.size(); ++d) {
    double best = -1.0;
    int arg = -1;
    bool hits_ignore = false;
    for (std::size_t g = 0; g < gts.size(); ++g) {
      const double v = iou(ranked_dets[d], gts[g].box);
      if (v < iou_thresh) continue;
      if (gts[g].ignore) {
        hits_ignore = true;
        continue;
      }
      if (!taken[g] && v > best) {
        best = v;
        arg = static_cast<int>(g);
      }
    }
    if (arg >= 0) {
      taken[arg] = true;
      out.labels[d] = MatchLabel::kTruePositive;
      out.gt_index[d] = arg;
    } else if (hits_ignore) {
      out.labels[d] = MatchLabel::kIgnored;
    }
  }
  return out;
}

MatchOutcome match_detections(std::span<const Detection> ranked_dets, std::span<const GroundTruth> gts,
                              double iou_thresh) {
  std::vector<Box> boxes;
  boxes.reserve(ranked_dets.size());
  for (const auto& d : ranked_dets) boxes.push_back(d.box);
  return match_detections(std::span<const Box>(boxes), gts, iou_thresh);
}

std::vector<PrPoint> precision_recall_curve(std::span<const MatchLabel> ranked, std::size_t num_gt) {
  std::vector<PrPoint> curve;
  std::size_t tp = 0, fp = 0;
  for (auto label : ranked) {
    if (label == MatchLabel::kIgnored) continue;
    (label == MatchLabel::kTruePositive ? tp : fp) += 1;
    const double recall = num_gt == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(num_gt);
    curve.push_back({recall, static_cast<double>(tp) / static_cast<double>(tp + fp)});
  }
  return curve;
}

double average_precision(std::span<const MatchLabel> ranked, std::size_t num_gt) {
  auto curve = precision_recall_curve(ranked, num_gt);
  if (num_gt == 0) return curve.empty() ? 1.0 : 0.0;
  for (std::size_t k = curve.size(); k-- > 1;) {
    curve[k - 1].precision = std::max(curve[k - 1].precision, curve[k].precision);
  }
  double ap = 0.0;
  double prev_recall = 0.0;
  for (const auto& p : curve) {
    ap += (p.recall - prev_recall) * p.precision;
    prev_recall = p.recall;
  }
  return std::clamp(ap, 0.0, 1.0);
}

RankedMatches rank_matches(std::span<const ImageEval> images, double iou_thresh) {
  struct Entry {
    double score;
    MatchLabel label;
  };
  std::vector<Entry> entries;
  RankedMatches out;
  for (const auto& image : images) {
    std::vector<std::size_t> order(image.detections.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return image.detections[a].score > image.detections[b].score;
    });
    std::vector<Box> boxes;
    for (auto i : order) boxes.push_back(image.detections[i].box);
    const auto match = match_detections(std::span<const Box>(boxes), image.ground_truth, iou_thresh);
    for (std::size_t k = 0; k < order.size(); ++k) {
      entries.push_back({image.detections[order[k]].score, match.labels[k]});
    }
    for (const auto& g : image.ground_truth) out.num_gt += g.ignore ? 0 : 1;
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.score > b.score; });
  for (const auto& e : entries) {
    out.scores.push_back(e.score);
    out.labels.push_back(e.label);
  }
  return out;
}

double average_precision_at(std::span<const ImageEval> images, double iou_thresh) {
  const auto ranked = rank_matches(images, iou_thresh);
  return average_precision(ranked.labels, ranked.num_gt);
}

std::vector<double> map_iou_thresholds() {
  std::vector<double> t;
  for (int i = 0; i < 10; ++i) t.push_back((50 + 5 * i) / 100.0);
  return t;
}

MapSweep map_sweep(std::span<const ImageEval> images) {
  MapSweep sweep;
  sweep.thresholds = map_iou_thresholds();
  for (double t : sweep.thresholds) sweep.ap.push_back(average_precision_at(images, t));
  sweep.mean = std::accumulate(sweep.ap.begin(), sweep.ap.end(), 0.0) / static_cast<double>(sweep.ap.size());
  return sweep;
}

double nme(const Landmarks& predicted, const Landmarks& truth, std::span<const bool, kNumLandmarks> visible,
           double box_width, double box_height) {
  const double area = box_width * box_height;
  if (!(area > 0.0)) throw InvalidArgument("NME normaliser needs a positive-area face box");
  const double norm = std::sqrt(area);
  double sum = 0.0;
  int count = 0;
  for (int i = 0; i < kNumLandmarks; ++i) {
    if (!visible[i]) continue;
    sum += std::hypot(predicted[i].x - truth[i].x, predicted[i].y - truth[i].y);
    ++count;
  }
  if (count == 0) throw InvalidArgument("NME needs at least one visible landmark");
  return sum / count / norm;
}

std::vector<CedPoint> ced_curve(std::span<const double> nme_values, std::span<const double> thresholds) {
  if (nme_values.empty()) throw InvalidArgument("CED curve needs at least one NME value");
  if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
    throw InvalidArgument("CED thresholds must be ascending");
  }
  std::vector<double> sorted(nme_values.begin(), nme_values.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<CedPoint> curve;
  curve.reserve(thresholds.size());
  for (double t : thresholds) {
    const auto count = std::upper_bound(sorted.begin(), sorted.end(), t) - sorted.begin();
    curve.push_back({t, static_cast<double>(count) / static_cast<double>(sorted.size())});
  }
  return curve;
}

double failure_rate(std::span<const double> nme_values, double threshold) {
  if (nme_values.empty()) throw InvalidArgument("failure rate needs at least one NME value");
  const auto fails = std::count_if(nme_values.begin(), nme_values.end(), [&](double v) { return v > threshold; });
  return static_cast<double>(fails) / static_cast<double>(nme_values.size());
}

std::vector<double> ced_thresholds(double max_threshold, std::size_t steps) {
  std::vector<double> t(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) t[i] = max_threshold * static_cast<double>(i) / static_cast<double>(steps);
  return t;
}

}  // namespace faceloc
