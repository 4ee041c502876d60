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

#include "faceloc/anchors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "faceloc/error.hpp"

namespace faceloc {
namespace {

std::size_t cells(int extent, int stride) {
  return static_cast<std::size_t>((extent + stride - 1) / stride);
}

void validate(ImageSize input_size, std::span<const PyramidLevelSpec> specs) {
  if (input_size.width <= 0 || input_size.height <= 0) {
    throw InvalidArgument("input size must be positive, got " +
                          std::to_string(input_size.width) + "x" +
                          std::to_string(input_size.height));
  }
  if (specs.empty()) throw InvalidArgument("at least one pyramid level is required");
  for (const auto& spec : specs) {
    if (spec.stride <= 0) throw InvalidArgument("level " + spec.name + ": stride must be positive");
    if (!(spec.base_scale > 0.0)) {
      throw InvalidArgument("level " + spec.name + ": base_scale must be positive");
    }
    if (spec.scales_per_octave <= 0) {
      throw InvalidArgument("level " + spec.name + ": scales_per_octave must be positive");
    }
    if (!(spec.octave_step > 0.0)) {
      throw InvalidArgument("level " + spec.name + ": octave_step must be positive");
    }
  }
}

}  // namespace

std::vector<double> PyramidLevelSpec::scales() const {
  std::vector<double> out(static_cast<std::size_t>(std::max(scales_per_octave, 0)));
  for (int k = 0; k < scales_per_octave; ++k) out[k] = base_scale * std::pow(octave_step, k);
  return out;
}

std::vector<PyramidLevelSpec> default_level_specs() {
  std::vector<PyramidLevelSpec> specs;
  for (int i = 0; i < 5; ++i) {
    PyramidLevelSpec spec;
    spec.name = "P" + std::to_string(i + 2);
    spec.stride = 4 << i;
    spec.base_scale = 16.0 * (1 << i);
    specs.push_back(spec);
  }
  return specs;
}

std::vector<PyramidLevelSpec> level_specs_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid level config: ") + e.what());
  }
  const auto& levels = doc.contains("levels") ? doc.at("levels") : doc;
  if (!levels.is_array()) throw ParseError("level config must contain a \"levels\" array");
  std::vector<PyramidLevelSpec> specs;
  try {
    for (std::size_t i = 0; i < levels.size(); ++i) {
      const auto& item = levels[i];
      PyramidLevelSpec spec;
      spec.name = item.value("name", "L" + std::to_string(i));
      spec.stride = item.at("stride").get<int>();
      spec.base_scale = item.at("base_scale").get<double>();
      spec.scales_per_octave = item.value("scales_per_octave", spec.scales_per_octave);
      spec.octave_step = item.value("octave_step", spec.octave_step);
      specs.push_back(spec);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid level entry: ") + e.what());
  }
  return specs;
}

std::vector<PyramidLevelSpec> load_level_specs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open level config", path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return level_specs_from_json(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(e.what(), path);
  }
}

std::size_t anchor_count(ImageSize input_size, std::span<const PyramidLevelSpec> specs) {
  validate(input_size, specs);
  std::size_t total = 0;
  for (const auto& spec : specs) {
    total += cells(input_size.width, spec.stride) * cells(input_size.height, spec.stride) *
             static_cast<std::size_t>(spec.scales_per_octave);
  }
  return total;
}

AnchorSet generate_anchors(ImageSize input_size, std::span<const PyramidLevelSpec> specs) {
  AnchorSet set;
  set.input_size = input_size;
  set.anchors.reserve(anchor_count(input_size, specs));
  for (const auto& spec : specs) {
    LevelRange range;
    range.name = spec.name;
    range.stride = spec.stride;
    range.grid_width = static_cast<int>(cells(input_size.width, spec.stride));
    range.grid_height = static_cast<int>(cells(input_size.height, spec.stride));
    range.scales = spec.scales();
    range.begin = set.anchors.size();
    const double stride = spec.stride;
    for (int row = 0; row < range.grid_height; ++row) {
      const double cy = (row + 0.5) * stride;
      for (int col = 0; col < range.grid_width; ++col) {
        const double cx = (col + 0.5) * stride;
        for (double side : range.scales) set.anchors.push_back(Box::from_center(cx, cy, side, side));
      }
    }
    range.end = set.anchors.size();
    set.levels.push_back(std::move(range));
  }
  return set;
}

std::size_t MatchResult::num_positive() const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), AnchorLabel::kPositive));
}

std::size_t MatchResult::num_negative() const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), AnchorLabel::kNegative));
}

MatchResult match_anchors(const AnchorSet& anchors, std::span<const Box> gt_boxes,
                          const MatchOptions& options) {
  return match_anchors(std::span<const Box>(anchors.anchors), gt_boxes, options);
}

MatchResult match_anchors(std::span<const Box> anchors, std::span<const Box> gt_boxes,
                          const MatchOptions& options) {
  const std::size_t n = anchors.size();
  MatchResult result;
  result.labels.assign(n, AnchorLabel::kNegative);
  result.gt_index.assign(n, -1);
  result.max_iou.assign(n, 0.0);
  if (gt_boxes.empty()) return result;

  std::vector<int> best_gt(n, -1);
  // Best anchor per ground truth; ties keep the lowest anchor index.
  std::vector<double> gt_best_iou(gt_boxes.size(), 0.0);
  std::vector<std::size_t> gt_best_anchor(gt_boxes.size(), 0);

  for (std::size_t a = 0; a < n; ++a) {
    const Box& anchor = anchors[a];
    double best = 0.0;
    int arg = -1;
    for (std::size_t g = 0; g < gt_boxes.size(); ++g) {
      const double v = iou(anchor, gt_boxes[g]);
      if (v > best) {
        best = v;
        arg = static_cast<int>(g);
      }
      if (v > gt_best_iou[g]) {
        gt_best_iou[g] = v;
        gt_best_anchor[g] = a;
      }
    }
    result.max_iou[a] = best;
    best_gt[a] = arg;
    if (best > options.positive_iou) {
      result.labels[a] = AnchorLabel::kPositive;
      result.gt_index[a] = arg;
    } else if (best < options.negative_iou) {
      result.labels[a] = AnchorLabel::kNegative;
    } else {
      result.labels[a] = AnchorLabel::kIgnored;
    }
  }

  if (options.force_best_match) {
    std::vector<bool> covered(gt_boxes.size(), false);
    for (std::size_t a = 0; a < n; ++a) {
      if (result.labels[a] == AnchorLabel::kPositive) covered[result.gt_index[a]] = true;
    }
    std::vector<bool> forced(n, false);
    for (std::size_t g = 0; g < gt_boxes.size(); ++g) {
      if (covered[g] || gt_best_iou[g] <= 0.0) continue;
      const std::size_t a = gt_best_anchor[g];
      if (forced[a]) continue;  // lower gt index already claimed it
      forced[a] = true;
      result.labels[a] = AnchorLabel::kPositive;
      result.gt_index[a] = static_cast<int>(g);
    }
  }
  return result;
}

std::vector<std::size_t> select_hard_negatives(const MatchResult& match,
                                               std::span<const double> per_anchor_cls_loss,
                                               double ratio) {
  if (per_anchor_cls_loss.size() != match.labels.size()) {
    throw InvalidArgument("loss vector has " + std::to_string(per_anchor_cls_loss.size()) +
                          " entries, expected " + std::to_string(match.labels.size()));
  }
  if (!(ratio > 0.0)) throw InvalidArgument("negative:positive ratio must be positive");

  std::vector<std::size_t> negatives;
  for (std::size_t i = 0; i < match.labels.size(); ++i) {
    if (match.labels[i] == AnchorLabel::kNegative) negatives.push_back(i);
  }
  const std::size_t positives = match.num_positive();
  const std::size_t cap =
      positives == 0 ? 1 : static_cast<std::size_t>(std::floor(ratio * static_cast<double>(positives)));
  const std::size_t keep = std::min(cap, negatives.size());

  std::partial_sort(negatives.begin(), negatives.begin() + static_cast<std::ptrdiff_t>(keep),
                    negatives.end(), [&](std::size_t a, std::size_t b) {
                      if (per_anchor_cls_loss[a] != per_anchor_cls_loss[b]) {
                        return per_anchor_cls_loss[a] > per_anchor_cls_loss[b];
                      }
                      return a < b;
                    });
  negatives.resize(keep);
  std::sort(negatives.begin(), negatives.end());
  return negatives;
}

}  // namespace faceloc
