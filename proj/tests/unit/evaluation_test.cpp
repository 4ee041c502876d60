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

#include <random>

#include <gtest/gtest.h>

#include "faceloc/error.hpp"
#include "oracles/oracles.hpp"

namespace faceloc {
namespace {

using L = MatchLabel;

std::vector<GroundTruth> plain(const std::vector<Box>& boxes) {
  std::vector<GroundTruth> out;
  for (const auto& b : boxes) out.push_back({b, false});
  return out;
}

TEST(MatchDetectionsTest, HandCases) {
  const std::vector<Box> gt{{0, 0, 10, 10}};
  const std::vector<Box> one{{0, 0, 10, 10}};
  EXPECT_EQ(match_detections(std::span<const Box>(one), plain(gt), 0.5).labels, (std::vector<L>{L::kTruePositive}));
  const std::vector<Box> two{{0, 0, 10, 10}, {0, 0, 10, 9}};
  const auto m = match_detections(std::span<const Box>(two), plain(gt), 0.5);
  EXPECT_EQ(m.labels, (std::vector<L>{L::kTruePositive, L::kFalsePositive}));
  EXPECT_EQ(m.gt_index, (std::vector<int>{0, -1}));
}

TEST(MatchDetectionsTest, IgnoreRegions) {
  const std::vector<GroundTruth> gts{{{0, 0, 10, 10}, true}, {{50, 50, 10, 10}, false}};
  const std::vector<Box> dets{{0, 0, 10, 10}, {50, 50, 10, 10}, {100, 100, 5, 5}};
  const auto m = match_detections(std::span<const Box>(dets), gts, 0.5);
  EXPECT_EQ(m.labels, (std::vector<L>{L::kIgnored, L::kTruePositive, L::kFalsePositive}));
  // Ignored detections drop out of the ranking entirely; counted as a false
  // positive the same ranking would only reach 0.5.
  EXPECT_DOUBLE_EQ(average_precision(m.labels, 1), 1.0);
  EXPECT_DOUBLE_EQ(average_precision(std::vector<L>{L::kFalsePositive, L::kTruePositive, L::kFalsePositive}, 1), 0.5);
}

TEST(MatchDetectionsTest, AgreesWithExhaustiveAssignment) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> pos(0, 30), size(5, 20);
  std::uniform_int_distribution<int> nd(0, 6), ng(0, 4);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Box> dets(nd(rng)), gts(ng(rng));
    for (auto& b : dets) b = {pos(rng), pos(rng), size(rng), size(rng)};
    for (auto& b : gts) b = {pos(rng), pos(rng), size(rng), size(rng)};
    const double thresh = 0.3;
    const auto m = match_detections(std::span<const Box>(dets), plain(gts), thresh);
    ASSERT_EQ(m.gt_index, oracle::brute_force_assignment(dets, gts, thresh)) << trial;
  }
}

TEST(AveragePrecisionTest, HandCases) {
  EXPECT_DOUBLE_EQ(average_precision(std::vector<L>{L::kTruePositive, L::kTruePositive}, 2), 1.0);
  EXPECT_DOUBLE_EQ(average_precision(std::vector<L>{L::kFalsePositive}, 1), 0.0);
  EXPECT_NEAR(average_precision(std::vector<L>{L::kTruePositive, L::kFalsePositive, L::kTruePositive}, 2), 5.0 / 6.0,
              1e-15);
  EXPECT_DOUBLE_EQ(average_precision(std::vector<L>{}, 3), 0.0);
  EXPECT_DOUBLE_EQ(average_precision(std::vector<L>{}, 0), 1.0);
  EXPECT_DOUBLE_EQ(average_precision(std::vector<L>{L::kFalsePositive}, 0), 0.0);
}

TEST(AveragePrecisionTest, MatchesThresholdEnumeration) {
  std::mt19937_64 rng(78);
  std::uniform_int_distribution<int> len(0, 8), lab(0, 2), ngt(0, 5);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<L> ranked(len(rng));
    std::size_t tp = 0;
    for (auto& l : ranked) {
      l = static_cast<L>(lab(rng));
      tp += l == L::kTruePositive;
    }
    const std::size_t num_gt = std::max<std::size_t>(tp, ngt(rng));
    ASSERT_NEAR(average_precision(ranked, num_gt), oracle::threshold_enumeration_ap(ranked, num_gt), 1e-12);
  }
}

TEST(AveragePrecisionTest, PrCurve) {
  const auto c = precision_recall_curve(std::vector<L>{L::kTruePositive, L::kIgnored, L::kFalsePositive}, 2);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_DOUBLE_EQ(c[1].recall, 0.5);
  EXPECT_DOUBLE_EQ(c[1].precision, 0.5);
}

TEST(MapSweepTest, Cases) {
  const auto t = map_iou_thresholds();
  ASSERT_EQ(t.size(), 10u);
  EXPECT_DOUBLE_EQ(t.front(), 0.5);
  EXPECT_DOUBLE_EQ(t.back(), 0.95);

  std::vector<ImageEval> perfect{{"a", {{{0, 0, 10, 10}, 1.0, {}, {}}}, {{{0, 0, 10, 10}, false}}},
                                 {"b", {{{5, 5, 20, 20}, 1.0, {}, {}}}, {{{5, 5, 20, 20}, false}}}};
  EXPECT_DOUBLE_EQ(map_sweep(perfect).mean, 1.0);

  std::vector<ImageEval> sixty{{"a", {{{0, 0, 10, 6}, 0.9, {}, {}}}, {{{0, 0, 10, 10}, false}}}};
  const auto s = map_sweep(sixty);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(s.ap[i], t[i] <= 0.6 ? 1.0 : 0.0) << t[i];
  EXPECT_NEAR(s.mean, 0.3, 1e-15);

  std::vector<ImageEval> empty{{"a", {}, {{{0, 0, 10, 10}, false}}}};
  EXPECT_EQ(map_sweep(empty).mean, 0.0);
}

TEST(RankMatchesTest, MergesAcrossImages) {
  std::vector<ImageEval> images{
      {"a", {{{0, 0, 10, 10}, 0.9, {}, {}}, {{40, 40, 10, 10}, 0.5, {}, {}}}, {{{0, 0, 10, 10}, false}}},
      {"b", {{{0, 0, 10, 10}, 0.7, {}, {}}}, {{{0, 0, 10, 10}, false}}}};
  const auto r = rank_matches(images, 0.5);
  EXPECT_EQ(r.scores, (std::vector<double>{0.9, 0.7, 0.5}));
  EXPECT_EQ(r.labels, (std::vector<L>{L::kTruePositive, L::kTruePositive, L::kFalsePositive}));
  EXPECT_EQ(r.num_gt, 2u);
}

TEST(NmeTest, Cases) {
  Landmarks truth{{{10, 10}, {20, 10}, {15, 15}, {12, 20}, {18, 20}}};
  const std::array<bool, 5> all{true, true, true, true, true};
  EXPECT_EQ(nme(truth, truth, all, 100, 100), 0.0);
  Landmarks shifted = truth;
  for (auto& p : shifted) p = {p.x + 3, p.y + 4};
  EXPECT_NEAR(nme(shifted, truth, all, 100, 100), 0.05, 1e-15);
  EXPECT_NEAR(nme(shifted, truth, all, 50, 200), 0.05, 1e-15);
  Landmarks one_off = truth;
  one_off[2].x += 30;
  std::array<bool, 5> masked = all;
  masked[2] = false;
  EXPECT_EQ(nme(one_off, truth, masked, 100, 100), 0.0);
  EXPECT_THROW(nme(truth, truth, all, 0, 100), InvalidArgument);
}

TEST(CedTest, Cases) {
  const std::vector<double> zeros(5, 0.0);
  for (const auto& p : ced_curve(zeros, ced_thresholds())) EXPECT_EQ(p.fraction, 1.0);
  const std::vector<double> two{0.05, 0.15};
  const std::vector<double> t{0.10};
  EXPECT_EQ(ced_curve(two, t)[0].fraction, 0.5);
  EXPECT_EQ(failure_rate(two), 0.5);
  const std::vector<double> edge{0.10};
  EXPECT_EQ(failure_rate(edge), 0.0);
  EXPECT_THROW(ced_curve(std::vector<double>{}, t), InvalidArgument);
  const auto grid = ced_thresholds(0.2, 200);
  EXPECT_EQ(grid.size(), 201u);
  EXPECT_DOUBLE_EQ(grid.back(), 0.2);
}

TEST(CedTest, ValidCdfAndDirectCount) {
  std::mt19937_64 rng(80);
  std::exponential_distribution<double> e(15.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(1 + trial * 3);
    for (auto& x : v) x = e(rng);
    const auto c = ced_curve(v, ced_thresholds());
    for (std::size_t i = 0; i < c.size(); ++i) {
      EXPECT_GE(c[i].fraction, 0.0);
      EXPECT_LE(c[i].fraction, 1.0);
      if (i > 0) EXPECT_GE(c[i].fraction, c[i - 1].fraction);
    }
    const auto fails = std::count_if(v.begin(), v.end(), [](double x) { return x > 0.10; });
    EXPECT_DOUBLE_EQ(failure_rate(v, 0.10), static_cast<double>(fails) / v.size());
  }
}

TEST(ReportTest, Writers) {
  EvalReport r;
  r.num_images = 1;
  r.ap = 5.0 / 6.0;
  r.pr_curve = {{0.5, 1.0}, {0.5, 0.5}, {1.0, 2.0 / 3.0}};
  r.map = MapSweep{map_iou_thresholds(), std::vector<double>(10, 0.5), 0.5};
  r.nme_per_face = {0.05, 0.15};
  r.ced = ced_curve(r.nme_per_face, std::vector<double>{0.0, 0.1, 0.2});
  r.failure_rate = 0.5;
  const auto kv = format_key_values(r);
  EXPECT_NE(kv.find("ap=0.8333333333"), std::string::npos) << kv;
  EXPECT_NE(kv.find("map=0.5"), std::string::npos);
  EXPECT_NE(kv.find("ap_iou_0.95="), std::string::npos);
  EXPECT_NE(kv.find("failure_rate=0.5"), std::string::npos);
  const auto pr = format_pr_csv(r);
  EXPECT_EQ(pr.substr(0, pr.find('\n')), "rank,recall,precision");
  EXPECT_EQ(std::count(pr.begin(), pr.end(), '\n'), 4);
  EXPECT_EQ(format_ced_csv(r).substr(0, 20), "threshold,fraction\n0");
  const std::array<double, 2> pts[] = {{0, 1}, {1, 0.5}};
  const auto svg = format_curve_svg("PR", "recall", "precision", pts, 1, 1);
  EXPECT_EQ(svg.substr(0, 4), "<svg");
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
  EXPECT_FALSE(format_summary(r).empty());
}

}  // namespace
}  // namespace faceloc
