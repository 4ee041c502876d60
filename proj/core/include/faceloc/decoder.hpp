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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "faceloc/mesh.hpp"
#include "faceloc/sparse.hpp"

namespace faceloc {

inline constexpr std::size_t kShapeTextureDim = 128;

// Joint shape + texture latent code.
struct ShapeTextureParams {
  std::vector<double> values = std::vector<double>(kShapeTextureDim, 0.0);

  void validate() const;  // finite entries
};

enum class Activation { kIdentity, kRelu };

Activation activation_from_string(const std::string& name);
std::string to_string(Activation activation);

// One decoder stage: optional up-sampling onto this level's mesh, then a
// Chebyshev convolution over it, bias and activation.
struct DecoderLayer {
  std::optional<CsrMatrix> upsample;
  std::size_t num_vertices = 0;
  std::vector<Triangle> triangles;
  ChebFilter filter;
  std::vector<double> bias;
  Activation activation = Activation::kRelu;

  // Derived from the topology by MeshDecoder::finalize().
  CsrMatrix scaled_laplacian;
};

// Latent -> dense expansion to the coarsest mesh (coarse_vertices x
// coarse_channels, vertex-major) -> layers -> n x 6 vertex attributes.
struct MeshDecoder {
  std::size_t latent_dim = kShapeTextureDim;
  std::size_t coarse_vertices = 0;
  std::size_t coarse_channels = 0;
  Matrix dense_weight;  // (coarse_vertices * coarse_channels) x latent_dim
  std::vector<double> dense_bias;
  std::vector<DecoderLayer> layers;

  // Checks the dimension chain and builds each layer's scaled Laplacian.
  // Throws ConfigError carrying the offending layer index.
  void finalize();
  void validate() const;

  std::size_t output_vertices() const;
  const std::vector<Triangle>& output_triangles() const;
};

// Forward pass; colour channels (3..5) of the result are clamped to [0, 1].
Matrix decode(std::span<const double> latent, const MeshDecoder& decoder);
Matrix decode(const ShapeTextureParams& params, const MeshDecoder& decoder);

// Versioned JSON container; see docs in README ("Decoder file").
MeshDecoder decoder_from_json(const std::string& text);
std::string decoder_to_json(const MeshDecoder& decoder);
MeshDecoder load_decoder(const std::string& path);
void save_decoder(const MeshDecoder& decoder, const std::string& path);

// Whitespace-separated numbers or a JSON array.
std::vector<double> load_latent(const std::string& path);

}  // namespace faceloc
