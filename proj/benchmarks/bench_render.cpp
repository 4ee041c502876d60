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

#include <benchmark/benchmark.h>

#include "faceloc/render.hpp"
#include "icosphere.hpp"

namespace {

using namespace faceloc;

void BM_Render(benchmark::State& state) {
  const auto sphere = bench::make_icosphere(static_cast<int>(state.range(0)));
  const int side = static_cast<int>(state.range(1));
  const CameraParams camera{{0.3, 0.4, 3.0}, {0, 0, 0}, side * 0.8};
  const IlluminationParams light{{2.0, 2.0, 3.0}, {0.6, 0.6, 0.6}, {0.3, 0.3, 0.3}};
  for (auto _ : state) {
    auto image = render(sphere.vertices, sphere.triangles, camera, light, {side, side});
    benchmark::DoNotOptimize(image.data().data());
  }
  state.counters["triangles"] = static_cast<double>(sphere.triangles.size());
}
BENCHMARK(BM_Render)->Args({3, 128})->Args({4, 256})->Args({5, 256})->Unit(benchmark::kMillisecond);

void BM_DenseLoss(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const Image a(side, side, 0.25);
  const Image b(side, side, 0.75);
  for (auto _ : state) benchmark::DoNotOptimize(dense_regression_loss(a, b));
}
BENCHMARK(BM_DenseLoss)->Arg(112)->Arg(640);

}  // namespace
