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

#include "faceloc/mesh.hpp"
#include "icosphere.hpp"

namespace {

using namespace faceloc;

void BM_ScaledLaplacian(benchmark::State& state) {
  const auto sphere = bench::make_icosphere(static_cast<int>(state.range(0)));
  const auto adjacency = MeshGraph::adjacency_from_triangles(sphere.vertices.rows(), sphere.triangles);
  for (auto _ : state) {
    auto scaled = scale_laplacian(build_laplacian(adjacency));
    benchmark::DoNotOptimize(&scaled);
  }
  state.counters["vertices"] = static_cast<double>(sphere.vertices.rows());
}
BENCHMARK(BM_ScaledLaplacian)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

// Args: subdivision level, Chebyshev order, channels in = out.
void BM_ChebConv(benchmark::State& state) {
  const auto sphere = bench::make_icosphere(static_cast<int>(state.range(0)));
  const std::size_t order = state.range(1);
  const std::size_t channels = state.range(2);
  const auto adjacency = MeshGraph::adjacency_from_triangles(sphere.vertices.rows(), sphere.triangles);
  const auto scaled = scale_laplacian(build_laplacian(adjacency));

  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  Matrix x(sphere.vertices.rows(), channels);
  for (double& v : x.data()) v = normal(rng);
  ChebFilter filter(order, channels, channels);
  for (std::size_t k = 0; k < order; ++k)
    for (std::size_t i = 0; i < channels; ++i)
      for (std::size_t o = 0; o < channels; ++o) filter(k, i, o) = normal(rng);

  for (auto _ : state) {
    auto y = cheb_conv(x, filter, scaled);
    benchmark::DoNotOptimize(y.data().data());
  }
  state.counters["vertices"] = static_cast<double>(sphere.vertices.rows());
}
BENCHMARK(BM_ChebConv)->Args({3, 6, 16})->Args({4, 6, 16})->Args({5, 6, 16})->Args({5, 6, 32})
    ->Unit(benchmark::kMillisecond);

}  // namespace
