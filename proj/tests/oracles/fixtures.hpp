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

#pragma once

// Deterministic toy decoders shared by unit, CLI and acceptance tests.

#include <cstdint>
#include <random>
#include <vector>

#include "faceloc/decoder.hpp"
#include "faceloc/mesh.hpp"

namespace faceloc::fixtures {

inline std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> v(n);
  for (auto& e : v) e = u(rng);
  return v;
}

// Two layers on an icosahedron: coarse 12 vertices x `hidden` channels ->
// cheb(K) -> relu -> cheb(K) -> 6 channels.
inline MeshDecoder random_icosahedron_decoder(std::uint64_t seed, std::size_t latent_dim = 16,
                                              std::size_t hidden = 4, std::size_t order = 3) {
  std::mt19937_64 rng(seed);
  MeshDecoder dec;
  dec.latent_dim = latent_dim;
  dec.coarse_vertices = 12;
  dec.coarse_channels = hidden;
  dec.dense_weight = Matrix(12 * hidden, latent_dim);
  const auto w = random_vector(12 * hidden * latent_dim, rng, 0.5);
  std::copy(w.begin(), w.end(), dec.dense_weight.data().begin());
  dec.dense_bias = random_vector(12 * hidden, rng, 0.1);
  const auto tris = icosahedron_triangles();

  DecoderLayer l0;
  l0.num_vertices = 12;
  l0.triangles = tris;
  l0.filter = ChebFilter(order, hidden, hidden, random_vector(order * hidden * hidden, rng, 0.5));
  l0.bias = random_vector(hidden, rng, 0.1);
  l0.activation = Activation::kRelu;

  DecoderLayer l1 = l0;
  l1.filter = ChebFilter(order, hidden, 6, random_vector(order * hidden * 6, rng, 0.5));
  l1.bias = random_vector(6, rng, 0.1);
  l1.activation = Activation::kIdentity;

  dec.layers = {l0, l1};
  dec.finalize();
  return dec;
}

// Decoder whose output equals the dense expansion exactly: the weight is a
// 0/1 selection of latent entries, theta_0 = I and the up-sampling is the
// identity, so latent[v * 6 + c] becomes vertex attribute (v, c).
inline MeshDecoder identity_icosahedron_decoder(std::size_t latent_dim = kShapeTextureDim) {
  MeshDecoder dec;
  dec.latent_dim = latent_dim;
  dec.coarse_vertices = 12;
  dec.coarse_channels = 6;
  dec.dense_weight = Matrix(72, latent_dim);
  for (std::size_t r = 0; r < 72; ++r) dec.dense_weight(r, r) = 1.0;
  dec.dense_bias.assign(72, 0.0);

  DecoderLayer layer;
  layer.upsample = CsrMatrix::identity(12);
  layer.num_vertices = 12;
  layer.triangles = icosahedron_triangles();
  layer.filter = ChebFilter(2, 6, 6);
  for (std::size_t c = 0; c < 6; ++c) layer.filter(0, c, c) = 1.0;
  layer.bias.assign(6, 0.0);
  layer.activation = Activation::kIdentity;
  dec.layers = {layer};
  dec.finalize();
  return dec;
}

// Latent for identity_icosahedron_decoder: unit icosahedron scaled by
// `radius` with smoothly varying colours.
inline std::vector<double> icosahedron_latent(double radius = 1.0, std::size_t latent_dim = kShapeTextureDim) {
  std::vector<double> z(latent_dim, 0.0);
  const auto pos = icosahedron_positions();
  for (std::size_t v = 0; v < 12; ++v) {
    for (std::size_t c = 0; c < 3; ++c) {
      z[v * 6 + c] = radius * pos(v, c);
      z[v * 6 + 3 + c] = 0.5 + 0.5 * pos(v, c);
    }
  }
  return z;
}

}  // namespace faceloc::fixtures
