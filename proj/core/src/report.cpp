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

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include "faceloc/evaluation.hpp"

namespace faceloc {
namespace {

std::string fixed(double v, int digits = 4) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << v;
  return out.str();
}

std::string exact(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string format_summary(const EvalReport& r) {
  std::ostringstream out;
  out << "images:        " << r.num_images << '\n'
      << "detections:    " << r.num_detections << '\n'
      << "ground truth:  " << r.num_ground_truth << '\n'
      << "AP@" << fixed(r.iou_threshold, 2) << ":       " << fixed(r.ap) << '\n';
  for (const auto& [name, ap] : r.subset_ap) out << "AP[" << name << "]: " << fixed(ap) << '\n';
  if (r.map) {
    out << "mAP@[0.50:0.95]: " << fixed(r.map->mean) << '\n';
    for (std::size_t i = 0; i < r.map->thresholds.size(); ++i) {
      out << "  AP@" << fixed(r.map->thresholds[i], 2) << " = " << fixed(r.map->ap[i]) << '\n';
    }
  }
  if (!r.nme_per_face.empty()) {
    double mean = 0.0;
    for (double v : r.nme_per_face) mean += v;
    mean /= static_cast<double>(r.nme_per_face.size());
    out << "faces with landmarks: " << r.nme_per_face.size() << '\n'
        << "mean NME:      " << fixed(100.0 * mean, 3) << "%\n";
    if (r.failure_rate) {
      out << "failure rate (NME > " << fixed(100.0 * r.failure_threshold, 1) << "%): "
          << fixed(100.0 * *r.failure_rate, 3) << "%\n";
    }
  }
  return out.str();
}

std::string format_key_values(const EvalReport& r) {
  std::ostringstream out;
  out << "num_images=" << r.num_images << '\n'
      << "num_detections=" << r.num_detections << '\n'
      << "num_ground_truth=" << r.num_ground_truth << '\n'
      << "iou_threshold=" << exact(r.iou_threshold) << '\n'
      << "ap=" << exact(r.ap) << '\n';
  for (const auto& [name, ap] : r.subset_ap) out << "ap_" << name << '=' << exact(ap) << '\n';
  if (r.map) {
    for (std::size_t i = 0; i < r.map->thresholds.size(); ++i) {
      char key[32];
      std::snprintf(key, sizeof(key), "ap_iou_%.2f", r.map->thresholds[i]);
      out << key << '=' << exact(r.map->ap[i]) << '\n';
    }
    out << "map=" << exact(r.map->mean) << '\n';
  }
  if (!r.nme_per_face.empty()) {
    double mean = 0.0;
    for (double v : r.nme_per_face) mean += v;
    out << "num_landmark_faces=" << r.nme_per_face.size() << '\n'
        << "mean_nme=" << exact(mean / static_cast<double>(r.nme_per_face.size())) << '\n';
    if (r.failure_rate) {
      out << "failure_threshold=" << exact(r.failure_threshold) << '\n'
          << "failure_rate=" << exact(*r.failure_rate) << '\n';
    }
  }
  return out.str();
}

std::string format_pr_csv(const EvalReport& r) {
  std::ostringstream out;
  out << "rank,recall,precision\n";
  for (std::size_t i = 0; i < r.pr_curve.size(); ++i) {
    out << i + 1 << ',' << exact(r.pr_curve[i].recall) << ',' << exact(r.pr_curve[i].precision) << '\n';
  }
  return out.str();
}

std::string format_ced_csv(const EvalReport& r) {
  std::ostringstream out;
  out << "threshold,fraction\n";
  for (const auto& p : r.ced) out << exact(p.threshold) << ',' << exact(p.fraction) << '\n';
  return out.str();
}

std::string format_curve_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                             std::span<const std::array<double, 2>> points, double x_max, double y_max) {
  constexpr double kWidth = 480, kHeight = 360, kLeft = 60, kRight = 20, kTop = 40, kBottom = 50;
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + pw * std::clamp(x / x_max, 0.0, 1.0); };
  auto sy = [&](double y) { return kTop + ph * (1.0 - std::clamp(y / y_max, 0.0, 1.0)); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << escape_xml(title)
      << "</text>\n"
      << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = x_max * i / 4.0;
    const double fy = y_max * i / 4.0;
    out << "<text x=\"" << sx(fx) << "\" y=\"" << kTop + ph + 16 << "\" text-anchor=\"middle\" font-size=\"11\">"
        << fixed(fx, 2) << "</text>\n"
        << "<text x=\"" << kLeft - 6 << "\" y=\"" << sy(fy) + 4 << "\" text-anchor=\"end\" font-size=\"11\">"
        << fixed(fy, 2) << "</text>\n";
  }
  out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\" font-size=\"13\">"
      << escape_xml(x_label) << "</text>\n"
      << "<text x=\"16\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
      << kTop + ph / 2 << ")\">" << escape_xml(y_label) << "</text>\n";
  if (!points.empty()) {
    out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
    for (const auto& p : points) out << fixed(sx(p[0]), 2) << ',' << fixed(sy(p[1]), 2) << ' ';
    out << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace faceloc
