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
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "faceloc/error.hpp"
#include "oracles/oracles.hpp"

namespace faceloc {
namespace {

TEST(AnchorsTest, DefaultPyramidOn640Has102300Anchors) {
  const auto specs = default_level_specs();
  const auto set = generate_anchors({640, 640}, specs);
  EXPECT_EQ(set.size(), 102300u);
  ASSERT_EQ(set.levels.size(), 5u);
  EXPECT_EQ(set.levels[0].name, "P2");
  EXPECT_EQ(set.levels[0].size(), 76800u);
  EXPECT_NEAR(static_cast<double>(set.levels[0].size()) / set.size(), 0.7507, 1e-4);
  const std::size_t per_level[] = {76800, 19200, 4800, 1200, 300};
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(set.levels[i].size(), per_level[i]);
}

TEST(AnchorsTest, ScaleTableMatchesPublishedValues) {
  const double table[5][3] = {{16, 20.16, 25.40},
                              {32, 40.32, 50.80},
                              {64, 80.63, 101.59},
                              {128, 161.26, 203.19},
                              {256, 322.54, 406.37}};
  const auto specs = default_level_specs();
  const int strides[] = {4, 8, 16, 32, 64};
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(specs[i].stride, strides[i]);
    const auto scales = specs[i].scales();
    ASSERT_EQ(scales.size(), 3u);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(scales[k], table[i][k], 0.01) << i << "," << k;
  }
}

TEST(AnchorsTest, SingleCellGridIsCentred) {
  PyramidLevelSpec spec{"P6", 64, 256.0};
  const std::vector<PyramidLevelSpec> specs{spec};
  const auto set = generate_anchors({64, 64}, specs);
  ASSERT_EQ(set.size(), 3u);
  for (const auto& a : set.anchors) {
    EXPECT_DOUBLE_EQ(a.cx(), 32.0);
    EXPECT_DOUBLE_EQ(a.cy(), 32.0);
    EXPECT_DOUBLE_EQ(a.w, a.h);
  }
}

TEST(AnchorsTest, CountFormulaHoldsForArbitrarySizes) {
  const auto specs = default_level_specs();
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dim(1, 1500);
  for (int trial = 0; trial < 40; ++trial) {
    const ImageSize size{dim(rng), dim(rng)};
    std::size_t expected = 0;
    for (const auto& s : specs) {
      expected += static_cast<std::size_t>(std::ceil(size.width / static_cast<double>(s.stride)) *
                                           std::ceil(size.height / static_cast<double>(s.stride)) * 3);
    }
    const auto set = generate_anchors(size, specs);
    EXPECT_EQ(set.size(), expected);
    EXPECT_EQ(anchor_count(size, specs), expected);
  }
}

TEST(AnchorsTest, LayoutIsLevelRowCellScale) {
  const auto specs = default_level_specs();
  const auto set = generate_anchors({40, 24}, specs);
  const auto& p3 = set.levels[1];
  // Second row, third column of P3, middle scale.
  const std::size_t idx = p3.begin + (1 * p3.grid_width + 2) * 3 + 1;
  EXPECT_DOUBLE_EQ(set.anchors[idx].cx(), 2.5 * 8);
  EXPECT_DOUBLE_EQ(set.anchors[idx].cy(), 1.5 * 8);
  EXPECT_NEAR(set.anchors[idx].w, 40.32, 0.01);
}

TEST(AnchorsTest, ScaleCoverageSpans16To406) {
  const auto set = generate_anchors({640, 640}, default_level_specs());
  double lo = 1e9, hi = 0;
  for (const auto& a : set.anchors) {
    lo = std::min(lo, a.w);
    hi = std::max(hi, a.w);
  }
  EXPECT_NEAR(lo, 16.0, 0.01);
  EXPECT_NEAR(hi, 406.37, 0.01);
}

TEST(AnchorsTest, RejectsBadInput) {
  const auto specs = default_level_specs();
  EXPECT_THROW(generate_anchors({0, 640}, specs), InvalidArgument);
  EXPECT_THROW(generate_anchors({640, -3}, specs), InvalidArgument);
  EXPECT_THROW(generate_anchors({640, 640}, std::vector<PyramidLevelSpec>{}), InvalidArgument);
  std::vector<PyramidLevelSpec> bad{{"X", 0, 16.0}};
  EXPECT_THROW(generate_anchors({64, 64}, bad), InvalidArgument);
}

TEST(AnchorsTest, LevelSpecsFromJson) {
  const auto specs = level_specs_from_json(
      R"({"levels": [{"name": "P3", "stride": 8, "base_scale": 32},
                     {"name": "P4", "stride": 16, "base_scale": 64, "scales_per_octave": 2, "octave_step": 2.0}]})");
  ASSERT_EQ(specs.size(), 2u);
  EXPECT_EQ(specs[0].scales_per_octave, 3);
  EXPECT_NEAR(specs[0].scales()[2], 50.80, 0.01);
  EXPECT_EQ(specs[1].scales(), (std::vector<double>{64.0, 128.0}));
  EXPECT_THROW(level_specs_from_json("{\"levels\": [{\"stride\": 8}]}"), ParseError);
  EXPECT_THROW(level_specs_from_json("not json"), ParseError);
}

TEST(IouTest, BasicValues) {
  const Box a{0, 0, 10, 10};
  EXPECT_DOUBLE_EQ(iou(a, a), 1.0);
  EXPECT_DOUBLE_EQ(iou(a, {20, 20, 5, 5}), 0.0);
  EXPECT_DOUBLE_EQ(iou(a, {10, 0, 10, 10}), 0.0);  // touching edge
  EXPECT_DOUBLE_EQ(iou(a, {5, 0, 10, 10}), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(iou({3, 3, 0, 0}, {3, 3, 0, 0}), 0.0);
}

TEST(IouTest, MatchesPixelOracleOnIntegerBoxes) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pos(0, 30), size(0, 20);
  for (int trial = 0; trial < 500; ++trial) {
    const Box a{double(pos(rng)), double(pos(rng)), double(size(rng)), double(size(rng))};
    const Box b{double(pos(rng)), double(pos(rng)), double(size(rng)), double(size(rng))};
    const double v = iou(a, b);
    EXPECT_NEAR(v, oracle::pixel_iou(a, b), 1e-12);
    EXPECT_DOUBLE_EQ(v, iou(b, a));
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
    if (a.area() > 0) EXPECT_DOUBLE_EQ(iou(a, a), 1.0);
  }
}

TEST(IouTest, MonotoneUnderShrinkingIntersection) {
  const Box a{0, 0, 20, 20};
  double prev = 1.0;
  for (int shift = 0; shift <= 20; ++shift) {
    const double v = iou(a, {double(shift), 0, 20, 20});
    EXPECT_LE(v, prev);
    prev = v;
  }
  EXPECT_EQ(prev, 0.0);
}

TEST(MatchAnchorsTest, ExactAnchorIsPositive) {
  const auto set = generate_anchors({64, 64}, default_level_specs());
  const Box gt = set.anchors[42];
  const std::vector<Box> gts{gt};
  const auto m = match_anchors(set, gts);
  EXPECT_EQ(m.labels[42], AnchorLabel::kPositive);
  EXPECT_EQ(m.gt_index[42], 0);
  EXPECT_DOUBLE_EQ(m.max_iou[42], 1.0);
}

TEST(MatchAnchorsTest, NoGroundTruthMeansAllNegative) {
  const auto set = generate_anchors({64, 64}, default_level_specs());
  const auto m = match_anchors(set, std::vector<Box>{});
  EXPECT_EQ(m.num_positive(), 0u);
  EXPECT_EQ(m.num_negative(), set.size());
}

TEST(MatchAnchorsTest, ThresholdTrichotomy) {
  const Box gt{0, 0, 10, 10};
  const std::vector<Box> anchors{{0, 0, 10, 6}, {0, 0, 10, 4}, {0, 0, 10, 1}};
  // IoUs built to be 0.6, 0.4 and 0.1; confirm with the grid oracle.
  EXPECT_NEAR(oracle::pixel_iou(anchors[0], gt), 0.6, 1e-12);
  EXPECT_NEAR(oracle::pixel_iou(anchors[1], gt), 0.4, 1e-12);
  EXPECT_NEAR(oracle::pixel_iou(anchors[2], gt), 0.1, 1e-12);
  const std::vector<Box> gts{gt};
  const auto m = match_anchors(std::span<const Box>(anchors), gts);
  EXPECT_EQ(m.labels[0], AnchorLabel::kPositive);
  EXPECT_EQ(m.labels[1], AnchorLabel::kIgnored);
  EXPECT_EQ(m.labels[2], AnchorLabel::kNegative);
  EXPECT_EQ(m.gt_index[1], -1);
}

TEST(MatchAnchorsTest, UnmatchedGroundTruthClaimsBestAnchor) {
  const std::vector<Box> anchors{{0, 0, 10, 10}, {100, 100, 10, 10}};
  const std::vector<Box> gts{{0, 0, 10, 4.5}};  // IoU 0.45 with anchor 0
  auto m = match_anchors(std::span<const Box>(anchors), gts);
  EXPECT_EQ(m.labels[0], AnchorLabel::kPositive);
  EXPECT_EQ(m.gt_index[0], 0);
  MatchOptions off;
  off.force_best_match = false;
  m = match_anchors(std::span<const Box>(anchors), gts, off);
  EXPECT_EQ(m.labels[0], AnchorLabel::kIgnored);
}

TEST(MatchAnchorsTest, TiesGoToLowestGroundTruth) {
  const std::vector<Box> anchors{{0, 0, 10, 10}};
  const std::vector<Box> gts{{0, 0, 10, 8}, {0, 2, 10, 8}};
  MatchOptions off;
  off.force_best_match = false;
  EXPECT_EQ(match_anchors(std::span<const Box>(anchors), gts, off).gt_index[0], 0);
  // With forcing on, the later ground truth has no positive anchor of its own
  // and claims its best one.
  EXPECT_EQ(match_anchors(std::span<const Box>(anchors), gts).gt_index[0], 1);
}

TEST(MatchAnchorsTest, LabelsPartitionRandomScenes) {
  const auto set = generate_anchors({128, 96}, default_level_specs());
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> pos(0, 100), size(8, 80);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Box> gts;
    for (int g = 0; g < 4; ++g) gts.push_back({pos(rng), pos(rng), size(rng), size(rng)});
    const auto m = match_anchors(set, gts);
    std::vector<bool> forced_gt(gts.size(), false);
    for (std::size_t a = 0; a < set.size(); ++a) {
      switch (m.labels[a]) {
        case AnchorLabel::kPositive:
          ASSERT_GE(m.gt_index[a], 0);
          if (m.max_iou[a] <= 0.5) forced_gt[m.gt_index[a]] = true;
          break;
        case AnchorLabel::kNegative: EXPECT_LT(m.max_iou[a], 0.3); break;
        case AnchorLabel::kIgnored:
          EXPECT_GE(m.max_iou[a], 0.3);
          EXPECT_LE(m.max_iou[a], 0.5);
          break;
      }
    }
    // Every ground truth ends up with at least one positive anchor.
    std::vector<bool> covered(gts.size(), false);
    for (std::size_t a = 0; a < set.size(); ++a) {
      if (m.labels[a] == AnchorLabel::kPositive) covered[m.gt_index[a]] = true;
    }
    for (bool c : covered) EXPECT_TRUE(c);
  }
}

MatchResult labels_from(const std::vector<AnchorLabel>& labels) {
  MatchResult m;
  m.labels = labels;
  m.gt_index.assign(labels.size(), -1);
  m.max_iou.assign(labels.size(), 0.0);
  return m;
}

TEST(HardNegativeTest, KeepsThreePerPositive) {
  std::vector<AnchorLabel> labels(12, AnchorLabel::kNegative);
  labels[3] = labels[7] = AnchorLabel::kPositive;
  const auto m = labels_from(labels);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 5);
  std::vector<double> loss(12);
  for (auto& l : loss) l = u(rng);

  // Sort oracle: negatives by loss descending, take 6.
  std::vector<std::size_t> negs;
  for (std::size_t i = 0; i < 12; ++i) {
    if (labels[i] == AnchorLabel::kNegative) negs.push_back(i);
  }
  std::sort(negs.begin(), negs.end(), [&](auto a, auto b) { return loss[a] > loss[b]; });
  negs.resize(6);
  std::sort(negs.begin(), negs.end());

  EXPECT_EQ(select_hard_negatives(m, loss, 3.0), negs);
  EXPECT_EQ(select_hard_negatives(m, loss, 3.0), select_hard_negatives(m, loss, 3.0));
}

TEST(HardNegativeTest, EdgeCases) {
  const auto no_neg = labels_from({AnchorLabel::kPositive, AnchorLabel::kIgnored});
  EXPECT_TRUE(select_hard_negatives(no_neg, std::vector<double>{1.0, 2.0}).empty());

  const auto ties = labels_from({AnchorLabel::kPositive, AnchorLabel::kNegative, AnchorLabel::kNegative,
                                 AnchorLabel::kNegative, AnchorLabel::kNegative, AnchorLabel::kNegative});
  EXPECT_EQ(select_hard_negatives(ties, std::vector<double>(6, 1.0)), (std::vector<std::size_t>{1, 2, 3}));

  const auto no_pos = labels_from({AnchorLabel::kNegative, AnchorLabel::kNegative});
  EXPECT_EQ(select_hard_negatives(no_pos, std::vector<double>{0.1, 0.9}), (std::vector<std::size_t>{1}));

  EXPECT_THROW(select_hard_negatives(no_pos, std::vector<double>{0.1}), InvalidArgument);
}

}  // namespace
}  // namespace faceloc
