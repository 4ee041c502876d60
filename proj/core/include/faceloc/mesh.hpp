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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "faceloc/sparse.hpp"

namespace faceloc {

using Triangle = std::array<std::uint32_t, 3>;

// Coloured mesh: per-vertex (x, y, z, r, g, b), a symmetric 0/1 adjacency
// with zero diagonal, and the triangle list the adjacency came from.
struct MeshGraph {
  static constexpr std::size_t kAttributes = 6;

  Matrix vertices;  // n x 6
  CsrMatrix adjacency;
  std::vector<Triangle> triangles;

  std::size_t num_vertices() const { return adjacency.rows(); }

  // Adjacency from triangle edges. Throws on out-of-range indices.
  static CsrMatrix adjacency_from_triangles(std::size_t num_vertices,
                                            std::span<const Triangle> triangles);
  static MeshGraph from_triangles(Matrix vertices, std::vector<Triangle> triangles);

  // Checks symmetry, zero diagonal, 0/1 entries, triangle edges present,
  // vertex matrix shape and colour range. Throws InvalidArgument.
  void validate() const;
};

// Lanczos iteration for the largest eigenvalue. Stops early when the Krylov
// space becomes invariant or the Ritz value is stable to `tolerance`.
struct EigenSolverOptions {
  std::size_t max_steps = 300;
  double tolerance = 1e-15;  // relative change of the largest Ritz value
};

// Combinatorial Laplacian L = D - E.
struct GraphLaplacian {
  CsrMatrix laplacian;
  std::vector<double> degree;
  double lambda_max = 0.0;
};

GraphLaplacian build_laplacian(const CsrMatrix& adjacency, const EigenSolverOptions& options = {});
GraphLaplacian build_laplacian(const MeshGraph& mesh, const EigenSolverOptions& options = {});

// Largest eigenvalue of a symmetric positive semi-definite matrix.
double estimate_lambda_max(const CsrMatrix& matrix, const EigenSolverOptions& options = {});

// 2 L / lambda_max - I. An edgeless graph (lambda_max == 0) maps to -I and
// logs a warning.
CsrMatrix scale_laplacian(const GraphLaplacian& lap);

// Chebyshev filter bank: theta(k, i, o) for k < order, i < in_channels,
// o < out_channels.
class ChebFilter {
 public:
  ChebFilter() = default;
  ChebFilter(std::size_t order, std::size_t in_channels, std::size_t out_channels);
  ChebFilter(std::size_t order, std::size_t in_channels, std::size_t out_channels,
             std::vector<double> coefficients);

  std::size_t order() const { return order_; }
  std::size_t in_channels() const { return in_; }
  std::size_t out_channels() const { return out_; }
  std::size_t parameter_count() const { return theta_.size(); }

  double& operator()(std::size_t k, std::size_t i, std::size_t o) { return theta_[(k * in_ + i) * out_ + o]; }
  double operator()(std::size_t k, std::size_t i, std::size_t o) const {
    return theta_[(k * in_ + i) * out_ + o];
  }
  std::span<const double> coefficients() const { return theta_; }

 private:
  std::size_t order_ = 0;
  std::size_t in_ = 0;
  std::size_t out_ = 0;
  std::vector<double> theta_;
};

// y = sum_k T_k(L~) x theta_k via x_k = 2 L~ x_{k-1} - x_{k-2}.
Matrix cheb_conv(const Matrix& x, const ChebFilter& filter, const CsrMatrix& scaled_laplacian);

// y = U x. Rows of U must sum to one within 1e-6.
Matrix mesh_upsample(const Matrix& x, const CsrMatrix& upsample);

struct Subdivision {
  std::vector<Triangle> triangles;
  CsrMatrix upsample;  // fine x coarse barycentric weights
  std::size_t num_vertices = 0;
};

// Regular icosahedron on the unit sphere (12 vertices, 20 faces), xyz only.
Matrix icosahedron_positions();
std::vector<Triangle> icosahedron_triangles();

// One step of midpoint subdivision: every edge gains a vertex at weight
// (0.5, 0.5); each triangle splits into four.
Subdivision subdivide(std::size_t num_vertices, std::span<const Triangle> triangles);

}  // namespace faceloc
