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

#include <filesystem>
#include <random>

#include <gtest/gtest.h>

#include "faceloc/error.hpp"

namespace faceloc {
namespace {

Detection det(Box b, double s) { return {b, s, std::nullopt, {}}; }

std::vector<Detection> random_dets(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> pos(0, 60), size(5, 40), score(0, 1);
  std::vector<Detection> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(det({pos(rng), pos(rng), size(rng), size(rng)}, score(rng)));
  return out;
}

TEST(NmsTest, HandCases) {
  const std::vector<Detection> one{det({1, 2, 3, 4}, 0.5)};
  EXPECT_EQ(nms(one, 0.5).size(), 1u);
  const std::vector<Detection> twins{det({0, 0, 10, 10}, 0.8), det({0, 0, 10, 10}, 0.9)};
  const auto kept = nms(twins, 0.5);
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0].score, 0.9);

  // IoU(A,B) = 0.6, IoU(A,C) = 0.1, IoU(B,C) < 0.1.
  const Detection a = det({0, 0, 10, 10}, 0.9);
  const Detection b = det({0, 0, 10, 6}, 0.8);
  const Detection c = det({10.0 - 20.0 / 11.0, 0, 10, 10}, 0.7);
  ASSERT_NEAR(iou(a.box, b.box), 0.6, 1e-12);
  ASSERT_NEAR(iou(a.box, c.box), 0.1, 1e-12);
  const std::vector<Detection> abc{c, b, a};
  const auto out = nms(abc, 0.5);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].box, a.box);
  EXPECT_EQ(out[1].box, c.box);
}

TEST(NmsTest, ThresholdIsInclusive) {
  const std::vector<Detection> d{det({0, 0, 10, 10}, 0.9), det({0, 0, 10, 5}, 0.8)};
  EXPECT_EQ(nms(d, 0.5).size(), 1u);
  EXPECT_EQ(nms(d, 0.50001).size(), 2u);
}

TEST(NmsTest, RandomisedProperties) {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 200; ++trial) {
    const auto dets = random_dets(rng, 1 + trial % 25);
    const auto kept = nms(dets, 0.4);
    for (std::size_t i = 0; i < kept.size(); ++i) {
      for (std::size_t j = i + 1; j < kept.size(); ++j) ASSERT_LT(iou(kept[i].box, kept[j].box), 0.4);
      if (i > 0) ASSERT_GE(kept[i - 1].score, kept[i].score);
    }
    const auto again = nms(kept, 0.4);
    ASSERT_EQ(again.size(), kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) ASSERT_EQ(again[i].box, kept[i].box);
    // Every dropped detection overlaps a kept, higher-or-equal scored one.
    for (const auto& d : dets) {
      bool covered = false;
      for (const auto& k : kept) covered |= (k.box == d.box && k.score == d.score) || (iou(k.box, d.box) >= 0.4 && k.score >= d.score);
      ASSERT_TRUE(covered);
    }
  }
}

TEST(BoxVotingTest, HandCases) {
  const Detection k = det({0, 0, 10, 10}, 1.0);
  const std::vector<Detection> self{k};
  EXPECT_EQ(box_voting(k, self, 0.4).box, k.box);

  const std::vector<Detection> pair{k, det({2, 0, 10, 10}, 1.0)};
  const auto v = box_voting(k, pair, 0.4);
  EXPECT_DOUBLE_EQ(v.box.x, 1.0);
  EXPECT_DOUBLE_EQ(v.box.y, 0.0);
  EXPECT_DOUBLE_EQ(v.box.w, 10.0);
  EXPECT_DOUBLE_EQ(v.box.h, 10.0);
  EXPECT_EQ(v.score, 1.0);

  const std::vector<Detection> far{k, det({9, 0, 10, 10}, 1.0)};
  EXPECT_EQ(box_voting(k, far, 0.4).box, k.box);
  EXPECT_EQ(kDefaultVoteIou, 0.4);
}

TEST(BoxVotingTest, VotedBoxStaysInsideNeighbourHull) {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pool = random_dets(rng, 10);
    const auto kept = nms(pool, 0.4);
    for (const auto& k : kept) {
      const auto v = box_voting(k, pool, 0.4);
      double x1 = 1e9, y1 = 1e9, x2 = -1e9, y2 = -1e9;
      for (const auto& d : pool) {
        if (iou(k.box, d.box) < 0.4) continue;
        x1 = std::min(x1, d.box.x);
        y1 = std::min(y1, d.box.y);
        x2 = std::max(x2, d.box.x2());
        y2 = std::max(y2, d.box.y2());
      }
      ASSERT_GE(v.box.x, x1 - 1e-9);
      ASSERT_GE(v.box.y, y1 - 1e-9);
      ASSERT_LE(v.box.x2(), x2 + 1e-9);
      ASSERT_LE(v.box.y2(), y2 + 1e-9);
    }
  }
}

TEST(MultiscaleTest, FrameMapping) {
  const ImageSize orig{100, 80};
  const TestConfig s2{"s2", 2.0, false};
  const auto m = to_original_frame(det({20, 20, 40, 40}, 0.9), s2, orig);
  EXPECT_EQ(m.box, (Box{10, 10, 20, 20}));
  EXPECT_EQ(m.source, "s2");
  const TestConfig flip{"f", 1.0, true};
  EXPECT_DOUBLE_EQ(to_original_frame(det({10, 0, 20, 20}, 0.9), flip, orig).box.x, 70.0);
}

TEST(MultiscaleTest, RoundTripsAndLandmarkSwap) {
  std::mt19937_64 rng(46);
  std::uniform_real_distribution<double> u(0, 300), s(0.3, 4.0);
  const ImageSize orig{320, 240};
  for (int trial = 0; trial < 200; ++trial) {
    Detection d = det({u(rng), u(rng), u(rng) / 3, u(rng) / 3}, 0.5);
    Landmarks pts;
    for (auto& p : pts) p = {u(rng), u(rng)};
    d.landmarks = pts;
    const TestConfig cfg{"c", s(rng), trial % 2 == 1};
    const auto back = to_original_frame(to_config_frame(d, cfg, orig), cfg, orig);
    ASSERT_NEAR(back.box.x, d.box.x, 1e-9);
    ASSERT_NEAR(back.box.y, d.box.y, 1e-9);
    ASSERT_NEAR(back.box.w, d.box.w, 1e-9);
    ASSERT_NEAR(back.box.h, d.box.h, 1e-9);
    for (int k = 0; k < kNumLandmarks; ++k) {
      ASSERT_NEAR((*back.landmarks)[k].x, pts[k].x, 1e-9);
      ASSERT_NEAR((*back.landmarks)[k].y, pts[k].y, 1e-9);
    }
  }
  // Left eye in the mirrored frame is the right eye of the original.
  Detection d = det({40, 40, 20, 20}, 0.5);
  d.landmarks = Landmarks{{{45, 45}, {55, 45}, {50, 50}, {46, 55}, {54, 55}}};
  const auto m = to_original_frame(d, {"f", 1.0, true}, {100, 100});
  EXPECT_DOUBLE_EQ((*m.landmarks)[0].x, 100 - 55.0);
  EXPECT_DOUBLE_EQ((*m.landmarks)[1].x, 100 - 45.0);
  EXPECT_DOUBLE_EQ((*m.landmarks)[2].x, 50.0);
  EXPECT_DOUBLE_EQ((*m.landmarks)[3].x, 100 - 54.0);
}

TEST(MultiscaleTest, SingleIdentityConfigEqualsNmsPlusVoting) {
  std::mt19937_64 rng(47);
  const auto raw = random_dets(rng, 20);
  const std::vector<TestConfig> cfg{{"id", 1.0, false}};
  const auto out = multiscale_union({{"id", raw}}, cfg, {100, 100});
  auto expect = nms(raw, 0.4);
  for (auto& d : expect) d = box_voting(d, raw, 0.4);
  ASSERT_EQ(out.size(), expect.size());
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i].box, expect[i].box);
  EXPECT_THROW(multiscale_union({{"nope", raw}}, cfg, {100, 100}), InvalidArgument);
}

TEST(MultiscaleTest, DefaultConfigs) {
  const auto cfg = default_test_configs({1000, 500});
  ASSERT_EQ(cfg.size(), 10u);
  EXPECT_EQ(cfg[0].tag, "s500");
  EXPECT_DOUBLE_EQ(cfg[0].scale, 1.0);
  EXPECT_EQ(cfg[9].tag, "s1700_flip");
  EXPECT_TRUE(cfg[9].flipped);
  EXPECT_DOUBLE_EQ(cfg[9].scale, 3.4);
}

TEST(DetectionRecordTest, RoundTrip) {
  DetectionRecord r{"img_1", det({1.25, 2, 3, 4.5}, 0.875)};
  r.detection.landmarks = Landmarks{{{1, 2}, {3, 4}, {5, 6}, {7, 8}, {9, 10.5}}};
  r.detection.source = "s500_flip";
  const auto back = parse_detection_record(format_detection_record(r));
  EXPECT_EQ(back.image_id, "img_1");
  EXPECT_EQ(back.detection.box, r.detection.box);
  EXPECT_EQ(back.detection.landmarks, r.detection.landmarks);
  EXPECT_EQ(back.detection.source, "s500_flip");
  const auto plain = parse_detection_record("a 0 0 1 1 0.5");
  EXPECT_FALSE(plain.detection.landmarks);
  try {
    parse_detection_record("a 0 0 1", "dets.txt", 7);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 7u);
    EXPECT_EQ(e.source(), "dets.txt");
  }
  EXPECT_THROW(parse_detection_record("a 0 0 1 x 0.5"), ParseError);
  EXPECT_THROW(parse_detection_record("a 0 0 1 1 0.5 x y"), ParseError);
}

}  // namespace
}  // namespace faceloc
