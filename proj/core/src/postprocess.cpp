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

#include "faceloc/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "faceloc/error.hpp"

namespace faceloc {
namespace {

std::vector<std::size_t> score_order(std::span<const Detection> dets) {
  std::vector<std::size_t> order(dets.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dets[a].score > dets[b].score; });
  return order;
}

bool parse_double(const std::string& token, double& out) {
  try {
    std::size_t used = 0;
    out = std::stod(token, &used);
    return used == token.size();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

std::vector<Detection> nms(std::span<const Detection> dets, double iou_thresh) {
  const auto order = score_order(dets);
  std::vector<bool> suppressed(dets.size(), false);
  std::vector<Detection> kept;
  for (std::size_t a = 0; a < order.size(); ++a) {
    const std::size_t i = order[a];
    if (suppressed[i]) continue;
    kept.push_back(dets[i]);
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      const std::size_t j = order[b];
      if (!suppressed[j] && iou(dets[i].box, dets[j].box) >= iou_thresh) suppressed[j] = true;
    }
  }
  return kept;
}

Detection box_voting(const Detection& kept, std::span<const Detection> pool, double iou_thresh) {
  double wsum = 0.0, x1 = 0.0, y1 = 0.0, x2 = 0.0, y2 = 0.0;
  bool kept_in_pool = false;
  auto add = [&](const Detection& d) {
    wsum += d.score;
    x1 += d.score * d.box.x;
    y1 += d.score * d.box.y;
    x2 += d.score * d.box.x2();
    y2 += d.score * d.box.y2();
  };
  std::size_t contributors = 0;
  for (const auto& d : pool) {
    if (d.box == kept.box && d.score == kept.score) kept_in_pool = true;
    if (iou(kept.box, d.box) >= iou_thresh) {
      add(d);
      ++contributors;
    }
  }
  if (!kept_in_pool) {
    add(kept);
    ++contributors;
  }
  Detection out = kept;
  if (contributors <= 1 || !(wsum > 0.0)) return out;
  out.box = Box::from_corners(x1 / wsum, y1 / wsum, x2 / wsum, y2 / wsum);
  return out;
}

std::vector<double> default_test_short_edges() { return {500.0, 800.0, 1100.0, 1400.0, 1700.0}; }

double scale_for_short_edge(ImageSize original, double short_edge) {
  const int s = std::min(original.width, original.height);
  if (s <= 0) throw InvalidArgument("image size must be positive");
  return short_edge / s;
}

std::vector<TestConfig> default_test_configs(ImageSize original) {
  std::vector<TestConfig> configs;
  for (double edge : default_test_short_edges()) {
    const std::string tag = "s" + std::to_string(static_cast<int>(edge));
    const double scale = scale_for_short_edge(original, edge);
    configs.push_back({tag, scale, false});
    configs.push_back({tag + "_flip", scale, true});
  }
  return configs;
}

Detection to_original_frame(const Detection& det, const TestConfig& config, ImageSize original) {
  if (!(config.scale > 0.0)) throw InvalidArgument("configuration " + config.tag + " has non-positive scale");
  Detection out = det;
  const double frame_width = original.width * config.scale;
  Box b = det.box;
  if (config.flipped) b.x = frame_width - b.x - b.w;
  out.box = {b.x / config.scale, b.y / config.scale, b.w / config.scale, b.h / config.scale};
  if (det.landmarks) {
    Landmarks pts{};
    for (int i = 0; i < kNumLandmarks; ++i) {
      const int src = config.flipped ? kLandmarkFlipOrder[i] : i;
      Point2 p = (*det.landmarks)[src];
      if (config.flipped) p.x = frame_width - p.x;
      pts[i] = {p.x / config.scale, p.y / config.scale};
    }
    out.landmarks = pts;
  }
  if (out.source.empty()) out.source = config.tag;
  return out;
}

Detection to_config_frame(const Detection& det, const TestConfig& config, ImageSize original) {
  if (!(config.scale > 0.0)) throw InvalidArgument("configuration " + config.tag + " has non-positive scale");
  Detection out = det;
  const double frame_width = original.width * config.scale;
  Box b{det.box.x * config.scale, det.box.y * config.scale, det.box.w * config.scale, det.box.h * config.scale};
  if (config.flipped) b.x = frame_width - b.x - b.w;
  out.box = b;
  if (det.landmarks) {
    Landmarks pts{};
    for (int i = 0; i < kNumLandmarks; ++i) {
      const int src = config.flipped ? kLandmarkFlipOrder[i] : i;
      Point2 p{(*det.landmarks)[src].x * config.scale, (*det.landmarks)[src].y * config.scale};
      if (config.flipped) p.x = frame_width - p.x;
      pts[i] = p;
    }
    out.landmarks = pts;
  }
  return out;
}

std::vector<Detection> multiscale_union(const std::map<std::string, std::vector<Detection>>& per_config,
                                        std::span<const TestConfig> configs, ImageSize original,
                                        double iou_vote) {
  std::vector<Detection> pool;
  for (const auto& [tag, dets] : per_config) {
    const auto it = std::find_if(configs.begin(), configs.end(), [&](const TestConfig& c) { return c.tag == tag; });
    if (it == configs.end()) throw InvalidArgument("unknown test configuration tag '" + tag + "'");
    for (const auto& d : dets) pool.push_back(to_original_frame(d, *it, original));
  }
  auto kept = nms(pool, iou_vote);
  for (auto& d : kept) d = box_voting(d, pool, iou_vote);
  return kept;
}

std::string format_detection_record(const DetectionRecord& record) {
  std::ostringstream out;
  out << std::setprecision(17);
  const auto& d = record.detection;
  out << record.image_id << ' ' << d.box.x << ' ' << d.box.y << ' ' << d.box.w << ' ' << d.box.h << ' '
      << d.score;
  if (d.landmarks) {
    for (const auto& p : *d.landmarks) out << ' ' << p.x << ' ' << p.y;
  }
  if (!d.source.empty()) out << ' ' << d.source;
  return out.str();
}

DetectionRecord parse_detection_record(const std::string& line, const std::string& source,
                                       std::size_t line_number) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(t);
  if (tokens.size() < 6) throw ParseError("detection record needs at least 6 fields", source, line_number);

  DetectionRecord rec;
  rec.image_id = tokens[0];
  double v[5];
  for (int i = 0; i < 5; ++i) {
    if (!parse_double(tokens[1 + i], v[i])) {
      throw ParseError("invalid number '" + tokens[1 + i] + "'", source, line_number);
    }
  }
  rec.detection.box = {v[0], v[1], v[2], v[3]};
  rec.detection.score = v[4];
  if (rec.detection.box.w < 0.0 || rec.detection.box.h < 0.0) {
    throw ParseError("negative box size", source, line_number);
  }

  std::size_t next = 6;
  const std::size_t rest = tokens.size() - next;
  if (rest >= 2 * kNumLandmarks) {
    Landmarks pts{};
    bool numeric = true;
    for (int i = 0; i < kNumLandmarks && numeric; ++i) {
      numeric = parse_double(tokens[next + 2 * i], pts[i].x) && parse_double(tokens[next + 2 * i + 1], pts[i].y);
    }
    if (numeric) {
      rec.detection.landmarks = pts;
      next += 2 * kNumLandmarks;
    }
  }
  if (tokens.size() - next == 1) {
    rec.detection.source = tokens[next];
  } else if (tokens.size() != next) {
    throw ParseError("unexpected trailing fields in detection record", source, line_number);
  }
  return rec;
}

std::vector<DetectionRecord> read_detection_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file", path);
  std::vector<DetectionRecord> records;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    records.push_back(parse_detection_record(line, path, number));
  }
  return records;
}

void write_detection_records(std::span<const DetectionRecord> records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write file", path);
  for (const auto& r : records) out << format_detection_record(r) << '\n';
}

}  // namespace faceloc
