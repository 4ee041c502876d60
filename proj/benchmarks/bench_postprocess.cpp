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

#include "faceloc/postprocess.hpp"

namespace {

using namespace faceloc;

std::vector<Detection> clustered_detections(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> centre(50.0, 590.0), jitter(-6.0, 6.0), size(20.0, 80.0), score(0.0, 1.0);
  std::vector<Detection> dets;
  while (dets.size() < n) {
    const double cx = centre(rng), cy = centre(rng), s = size(rng);
    for (int k = 0; k < 20 && dets.size() < n; ++k) {
      Detection d;
      d.box = Box::from_center(cx + jitter(rng), cy + jitter(rng), s + jitter(rng), s + jitter(rng));
      d.score = score(rng);
      dets.push_back(d);
    }
  }
  return dets;
}

void BM_Nms(benchmark::State& state) {
  const auto dets = clustered_detections(state.range(0), 11);
  for (auto _ : state) {
    auto kept = nms(dets, 0.4);
    benchmark::DoNotOptimize(kept.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Nms)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_MultiscaleUnion(benchmark::State& state) {
  const ImageSize original{1024, 768};
  const auto configs = default_test_configs(original);
  std::map<std::string, std::vector<Detection>> per_config;
  std::uint64_t seed = 0;
  for (const auto& c : configs) per_config[c.tag] = clustered_detections(state.range(0), ++seed);
  for (auto _ : state) {
    auto merged = multiscale_union(per_config, configs, original);
    benchmark::DoNotOptimize(merged.data());
  }
}
BENCHMARK(BM_MultiscaleUnion)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace
