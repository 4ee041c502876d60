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

#include <random>

#include <benchmark/benchmark.h>

#include "faceloc/anchors.hpp"

namespace {

using namespace faceloc;

void BM_GenerateAnchors(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const auto specs = default_level_specs();
  for (auto _ : state) {
    auto set = generate_anchors({side, side}, specs);
    benchmark::DoNotOptimize(set.anchors.data());
  }
  state.SetItemsProcessed(state.iterations() * anchor_count({side, side}, specs));
}
BENCHMARK(BM_GenerateAnchors)->Arg(320)->Arg(640)->Unit(benchmark::kMillisecond);

void BM_MatchAnchors(benchmark::State& state) {
  const auto set = generate_anchors({640, 640}, default_level_specs());
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pos(0.0, 560.0), size(10.0, 300.0);
  std::vector<Box> gts;
  for (int i = 0; i < state.range(0); ++i) {
    const double s = size(rng);
    gts.push_back({pos(rng), pos(rng), s, s * 1.2});
  }
  for (auto _ : state) {
    auto match = match_anchors(set, gts);
    benchmark::DoNotOptimize(match.labels.data());
  }
}
BENCHMARK(BM_MatchAnchors)->Arg(1)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace
