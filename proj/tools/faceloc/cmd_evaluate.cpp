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
#include <filesystem>
#include <iostream>
#include <map>
#include <numeric>

#include "cli_util.hpp"
#include "faceloc/annotations.hpp"
#include "faceloc/error.hpp"
#include "faceloc/evaluation.hpp"
#include "faceloc/postprocess.hpp"

namespace faceloc::cli {
namespace {

struct EvaluateOptions {
  std::string detections;
  std::string ground_truth;
  double iou = 0.5;
  bool iou_sweep = false;
  std::string out_dir;
  bool no_plots = false;
  double failure_threshold = 0.10;
  double ced_max = 0.2;
};

const char* const kSubsetNames[] = {"easy", "medium", "hard"};

// Subset s keeps faces with difficulty <= s; the rest become ignore regions.
std::vector<ImageEval> build_evals(const std::vector<ImageAnnotations>& gt,
                                   const std::map<std::string, std::vector<Detection>>& dets, int subset) {
  std::vector<ImageEval> evals;
  for (const auto& image : gt) {
    ImageEval e;
    e.image_id = image.image;
    for (const auto& face : image.faces) {
      const bool ignore = face.invalid() || (subset >= 0 && face.difficulty > subset);
      e.ground_truth.push_back({face.box, ignore});
    }
    if (const auto it = dets.find(image.image); it != dets.end()) e.detections = it->second;
    evals.push_back(std::move(e));
  }
  return evals;
}

std::vector<double> landmark_errors(const std::vector<ImageAnnotations>& gt, const std::vector<ImageEval>& evals,
                                    double iou_thresh) {
  std::vector<double> out;
  for (std::size_t i = 0; i < evals.size(); ++i) {
    std::vector<Detection> ranked = evals[i].detections;
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.score > b.score; });
    const auto match = match_detections(std::span<const Detection>(ranked), evals[i].ground_truth, iou_thresh);
    for (std::size_t d = 0; d < ranked.size(); ++d) {
      if (match.labels[d] != MatchLabel::kTruePositive || !ranked[d].landmarks) continue;
      const auto& face = gt[i].faces[match.gt_index[d]];
      if (!face.landmarks) continue;
      Landmarks truth;
      std::array<bool, kNumLandmarks> visible{};
      for (int k = 0; k < kNumLandmarks; ++k) {
        truth[k] = (*face.landmarks)[k].point;
        visible[k] = (*face.landmarks)[k].visible;
      }
      if (std::none_of(visible.begin(), visible.end(), [](bool v) { return v; })) continue;
      out.push_back(nme(*ranked[d].landmarks, truth, visible, face.box.w, face.box.h));
    }
  }
  return out;
}

std::vector<std::array<double, 2>> pr_points(const EvalReport& r) {
  std::vector<std::array<double, 2>> pts;
  for (const auto& p : r.pr_curve) pts.push_back({p.recall, p.precision});
  return pts;
}

int run(const EvaluateOptions& opt) {
  if (!(opt.iou > 0.0 && opt.iou <= 1.0)) throw UsageError("--iou must lie in (0, 1]");
  if (!(opt.failure_threshold > 0.0)) throw UsageError("--failure-threshold must be positive");
  if (!(opt.ced_max > 0.0)) throw UsageError("--ced-max must be positive");

  const auto gt = load_annotations(opt.ground_truth);
  std::map<std::string, std::vector<Detection>> dets;
  std::size_t num_dets = 0;
  {
    std::map<std::string, bool> known;
    for (const auto& image : gt) known[image.image] = true;
    for (auto& record : read_detection_records(opt.detections)) {
      if (!known.count(record.image_id)) {
        throw ParseError("detection for image not in ground truth: " + record.image_id, opt.detections);
      }
      dets[record.image_id].push_back(std::move(record.detection));
      ++num_dets;
    }
  }

  const auto evals = build_evals(gt, dets, -1);
  EvalReport report;
  report.num_images = gt.size();
  report.num_detections = num_dets;
  report.iou_threshold = opt.iou;
  const auto ranked = rank_matches(evals, opt.iou);
  report.num_ground_truth = ranked.num_gt;
  report.pr_curve = precision_recall_curve(ranked.labels, ranked.num_gt);
  report.ap = average_precision(ranked.labels, ranked.num_gt);
  if (opt.iou_sweep) report.map = map_sweep(evals);

  bool all_known = !gt.empty();
  bool any_face = false;
  for (const auto& image : gt) {
    for (const auto& face : image.faces) {
      any_face = true;
      if (face.difficulty < 0) all_known = false;
    }
  }
  if (all_known && any_face) {
    for (int s = 0; s < 3; ++s) {
      report.subset_ap[kSubsetNames[s]] = average_precision_at(build_evals(gt, dets, s), opt.iou);
    }
  }

  report.nme_per_face = landmark_errors(gt, evals, opt.iou);
  report.failure_threshold = opt.failure_threshold;
  if (!report.nme_per_face.empty()) {
    report.ced = ced_curve(report.nme_per_face, ced_thresholds(opt.ced_max, 200));
    report.failure_rate = failure_rate(report.nme_per_face, opt.failure_threshold);
  }

  const std::string summary = format_summary(report);
  std::cout << summary;

  if (!opt.out_dir.empty()) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(opt.out_dir, ec);
    if (ec) throw ParseError("cannot create output directory: " + ec.message(), opt.out_dir);
    const fs::path dir(opt.out_dir);
    write_text((dir / "summary.txt").string(), summary);
    write_text((dir / "metrics.txt").string(), format_key_values(report));
    write_text((dir / "pr.csv").string(), format_pr_csv(report));
    if (!opt.no_plots) {
      const auto pts = pr_points(report);
      write_text((dir / "pr.svg").string(),
                 format_curve_svg("Precision-recall @ IoU " + format_double(opt.iou, 3), "recall", "precision",
                                  pts, 1.0, 1.0));
    }
    if (!report.ced.empty()) {
      write_text((dir / "ced.csv").string(), format_ced_csv(report));
      if (!opt.no_plots) {
        std::vector<std::array<double, 2>> pts;
        for (const auto& p : report.ced) pts.push_back({p.threshold, p.fraction});
        write_text((dir / "ced.svg").string(),
                   format_curve_svg("Cumulative error distribution", "NME", "fraction of faces", pts, opt.ced_max,
                                    1.0));
      }
    }
  }
  return kOk;
}

}  // namespace

Command make_evaluate_command(CLI::App& root) {
  auto opt = std::make_shared<EvaluateOptions>();
  Command cmd;
  cmd.app = root.add_subcommand("evaluate", "Detection AP, landmark NME and CED against ground truth");
  add(cmd, "detections", opt->detections, "Detection records: image_id x y w h score [10 landmark coords] [tag]")
      ->required();
  add(cmd, "ground-truth", opt->ground_truth, "Annotation file (benchmark, landmark or canonical JSONL)")
      ->required();
  add(cmd, "iou", opt->iou, "IoU threshold for a true positive");
  add_flag(cmd, "iou-sweep", opt->iou_sweep, "Also report AP at IoU 0.50:0.05:0.95 and their mean");
  add(cmd, "out-dir", opt->out_dir, "Write summary.txt, metrics.txt, CSV curves and SVG plots here");
  add_flag(cmd, "no-plots", opt->no_plots, "Skip the SVG plots");
  add(cmd, "failure-threshold", opt->failure_threshold, "NME above which a face counts as a failure");
  add(cmd, "ced-max", opt->ced_max, "Largest NME on the CED curve");
  cmd.run = [opt] { return run(*opt); };
  return cmd;
}

}  // namespace faceloc::cli
