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

#include "faceloc/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <string>
#include <utility>

#include "faceloc/error.hpp"

namespace faceloc {

CsrMatrix MeshGraph::adjacency_from_triangles(std::size_t num_vertices,
                                              std::span<const Triangle> triangles) {
  std::vector<Triplet> edges;
  edges.reserve(triangles.size() * 6);
  for (const auto& tri : triangles) {
    for (int e = 0; e < 3; ++e) {
      const std::size_t a = tri[e];
      const std::size_t b = tri[(e + 1) % 3];
      if (a >= num_vertices || b >= num_vertices) {
        throw InvalidArgument("triangle references vertex outside 0.." + std::to_string(num_vertices - 1));
      }
      if (a == b) continue;
      edges.push_back({a, b, 1.0});
      edges.push_back({b, a, 1.0});
    }
  }
  auto summed = CsrMatrix::from_triplets(num_vertices, num_vertices, edges);
  // Shared edges were counted once per incident triangle; collapse to 0/1.
  std::vector<Triplet> unit;
  for (auto t : summed.to_triplets()) unit.push_back({t.row, t.col, 1.0});
  return CsrMatrix::from_triplets(num_vertices, num_vertices, unit);
}

MeshGraph MeshGraph::from_triangles(Matrix vertices, std::vector<Triangle> triangles) {
  MeshGraph mesh;
  mesh.adjacency = adjacency_from_triangles(vertices.rows(), triangles);
  mesh.vertices = std::move(vertices);
  mesh.triangles = std::move(triangles);
  return mesh;
}

void MeshGraph::validate() const {
  const std::size_t n = adjacency.rows();
  if (n == 0) throw InvalidArgument("mesh has no vertices");
  if (adjacency.cols() != n) throw InvalidArgument("adjacency must be square");
  if (vertices.rows() != n || vertices.cols() != kAttributes) {
    throw InvalidArgument("vertex matrix must be n x 6");
  }
  for (auto t : adjacency.to_triplets()) {
    if (t.row == t.col) throw InvalidArgument("adjacency has a self loop at " + std::to_string(t.row));
    if (t.value != 1.0) throw InvalidArgument("adjacency entries must be 0 or 1");
  }
  if (!adjacency.is_symmetric()) throw InvalidArgument("adjacency must be symmetric");
  for (const auto& tri : triangles) {
    for (int e = 0; e < 3; ++e) {
      if (tri[e] >= n) throw InvalidArgument("triangle index out of range");
      if (tri[e] != tri[(e + 1) % 3] && adjacency.at(tri[e], tri[(e + 1) % 3]) != 1.0) {
        throw InvalidArgument("triangle edge missing from adjacency");
      }
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t c = 3; c < kAttributes; ++c) {
      if (!(vertices(v, c) >= 0.0 && vertices(v, c) <= 1.0)) {
        throw InvalidArgument("vertex colour outside [0, 1] at vertex " + std::to_string(v));
      }
    }
  }
}

namespace {

// Largest eigenvalue of the symmetric tridiagonal matrix (alpha, beta) by
// Sturm-sequence bisection.
double tridiagonal_max_eigenvalue(const std::vector<double>& alpha, const std::vector<double>& beta) {
  const std::size_t m = alpha.size();
  double lo = alpha[0], hi = alpha[0];
  for (std::size_t i = 0; i < m; ++i) {
    const double r = (i > 0 ? std::abs(beta[i - 1]) : 0.0) + (i + 1 < m ? std::abs(beta[i]) : 0.0);
    lo = std::min(lo, alpha[i] - r);
    hi = std::max(hi, alpha[i] + r);
  }
  // Number of eigenvalues strictly below x.
  auto count_below = [&](double x) {
    std::size_t count = 0;
    double d = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double b2 = i > 0 ? beta[i - 1] * beta[i - 1] : 0.0;
      d = alpha[i] - x - (i > 0 ? b2 / d : 0.0);
      if (d == 0.0) d = -1e-300;
      if (d < 0.0) ++count;
    }
    return count;
  };
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (count_below(mid) == m) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace

double estimate_lambda_max(const CsrMatrix& matrix, const EigenSolverOptions& options) {
  const std::size_t n = matrix.rows();
  if (n == 0) return 0.0;
  // Fixed, non-constant start vector: reproducible, and in practice never
  // orthogonal to the dominant eigenvector.
  std::vector<double> q(n);
  std::uint64_t state = 0x9E3779B97F4A7C15ull;
  for (std::size_t i = 0; i < n; ++i) {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    q[i] = 0.5 + static_cast<double>(state >> 11) * 0x1.0p-53;
  }
  auto dot = [n](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
  };
  double norm = std::sqrt(dot(q, q));
  for (double& e : q) e /= norm;

  // Lanczos with full reorthogonalisation.
  std::vector<std::vector<double>> basis;
  std::vector<double> alpha, beta;
  const std::size_t max_steps = std::min<std::size_t>(n, std::max<std::size_t>(options.max_steps, 1));
  double theta = 0.0;
  int stable = 0;
  for (std::size_t j = 0; j < max_steps; ++j) {
    basis.push_back(q);
    auto w = matrix.multiply(q);
    alpha.push_back(dot(q, w));
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        const double c = dot(b, w);
        for (std::size_t i = 0; i < n; ++i) w[i] -= c * b[i];
      }
    }
    const double next_theta = tridiagonal_max_eigenvalue(alpha, beta);
    const double b = std::sqrt(dot(w, w));
    const double scale = std::max(std::abs(next_theta), 1e-300);
    stable = std::abs(next_theta - theta) <= options.tolerance * scale ? stable + 1 : 0;
    theta = next_theta;
    if (b <= 1e-12 * scale || stable >= 3) break;  // invariant subspace or converged
    beta.push_back(b);
    for (std::size_t i = 0; i < n; ++i) q[i] = w[i] / b;
  }
  return theta;
}

GraphLaplacian build_laplacian(const CsrMatrix& adjacency, const EigenSolverOptions& options) {
  const std::size_t n = adjacency.rows();
  if (adjacency.cols() != n) throw InvalidArgument("adjacency must be square");
  if (!adjacency.is_symmetric()) throw InvalidArgument("adjacency must be symmetric");

  GraphLaplacian out;
  out.degree.assign(n, 0.0);
  std::vector<Triplet> entries;
  entries.reserve(adjacency.nnz() + n);
  for (auto t : adjacency.to_triplets()) {
    if (t.row == t.col) throw InvalidArgument("adjacency must have a zero diagonal");
    out.degree[t.row] += t.value;
    entries.push_back({t.row, t.col, -t.value});
  }
  for (std::size_t i = 0; i < n; ++i) entries.push_back({i, i, out.degree[i]});
  out.laplacian = CsrMatrix::from_triplets(n, n, entries);
  out.lambda_max = estimate_lambda_max(out.laplacian, options);
  return out;
}

GraphLaplacian build_laplacian(const MeshGraph& mesh, const EigenSolverOptions& options) {
  return build_laplacian(mesh.adjacency, options);
}

CsrMatrix scale_laplacian(const GraphLaplacian& lap) {
  const std::size_t n = lap.laplacian.rows();
  if (lap.lambda_max <= 0.0) {
    std::clog << "faceloc: warning: graph has no edges (lambda_max = 0); scaled Laplacian is -I\n";
    return CsrMatrix::identity(n, -1.0);
  }
  return CsrMatrix::add(lap.laplacian, 2.0 / lap.lambda_max, CsrMatrix::identity(n), -1.0);
}

ChebFilter::ChebFilter(std::size_t order, std::size_t in_channels, std::size_t out_channels)
    : ChebFilter(order, in_channels, out_channels,
                 std::vector<double>(order * in_channels * out_channels, 0.0)) {}

ChebFilter::ChebFilter(std::size_t order, std::size_t in_channels, std::size_t out_channels,
                       std::vector<double> coefficients)
    : order_(order), in_(in_channels), out_(out_channels), theta_(std::move(coefficients)) {
  if (order_ < 1) throw InvalidArgument("Chebyshev order must be at least 1");
  if (in_ == 0 || out_ == 0) throw InvalidArgument("filter channel counts must be positive");
  if (theta_.size() != order_ * in_ * out_) {
    throw InvalidArgument("filter expects " + std::to_string(order_ * in_ * out_) +
                          " coefficients, got " + std::to_string(theta_.size()));
  }
}

namespace {

// out += basis * theta_k
void accumulate(const Matrix& basis, const ChebFilter& filter, std::size_t k, Matrix& out) {
  const std::size_t cin = filter.in_channels();
  const std::size_t cout = filter.out_channels();
  for (std::size_t v = 0; v < basis.rows(); ++v) {
    const auto xr = basis.row(v);
    auto yr = out.row(v);
    for (std::size_t i = 0; i < cin; ++i) {
      const double xi = xr[i];
      if (xi == 0.0) continue;
      for (std::size_t o = 0; o < cout; ++o) yr[o] += xi * filter(k, i, o);
    }
  }
}

}  // namespace

Matrix cheb_conv(const Matrix& x, const ChebFilter& filter, const CsrMatrix& scaled_laplacian) {
  const std::size_t n = scaled_laplacian.rows();
  if (scaled_laplacian.cols() != n) throw InvalidArgument("scaled Laplacian must be square");
  if (x.rows() != n) {
    throw InvalidArgument("cheb_conv: input has " + std::to_string(x.rows()) + " rows, graph has " +
                          std::to_string(n) + " vertices");
  }
  if (x.cols() != filter.in_channels()) {
    throw InvalidArgument("cheb_conv: input has " + std::to_string(x.cols()) +
                          " channels, filter expects " + std::to_string(filter.in_channels()));
  }

  Matrix y(n, filter.out_channels());
  accumulate(x, filter, 0, y);
  if (filter.order() == 1) return y;

  Matrix prev = x;
  Matrix curr = scaled_laplacian.multiply(x);
  accumulate(curr, filter, 1, y);
  Matrix next(n, x.cols());
  for (std::size_t k = 2; k < filter.order(); ++k) {
    scaled_laplacian.multiply_add(curr, 2.0, prev, -1.0, next);
    accumulate(next, filter, k, y);
    std::swap(prev, curr);
    std::swap(curr, next);
  }
  return y;
}

Matrix mesh_upsample(const Matrix& x, const CsrMatrix& upsample) {
  if (upsample.cols() != x.rows()) {
    throw InvalidArgument("mesh_upsample: matrix has " + std::to_string(upsample.cols()) +
                          " columns, input has " + std::to_string(x.rows()) + " vertices");
  }
  const auto row_ptr = upsample.row_ptr();
  const auto values = upsample.values();
  for (std::size_t r = 0; r < upsample.rows(); ++r) {
    double sum = 0.0;
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) sum += values[k];
    if (std::abs(sum - 1.0) > 1e-6) {
      throw InvalidArgument("mesh_upsample: row " + std::to_string(r) + " sums to " +
                            std::to_string(sum) + ", expected 1");
    }
  }
  return upsample.multiply(x);
}

Matrix icosahedron_positions() {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  const double raw[12][3] = {{-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0},
                             {0, -1, t}, {0, 1, t},  {0, -1, -t}, {0, 1, -t},
                             {t, 0, -1}, {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
  const double norm = std::sqrt(1.0 + t * t);
  Matrix m(12, 3);
  for (std::size_t i = 0; i < 12; ++i) {
    for (std::size_t c = 0; c < 3; ++c) m(i, c) = raw[i][c] / norm;
  }
  return m;
}

std::vector<Triangle> icosahedron_triangles() {
  return {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9},  {5, 11, 4},
          {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6},  {3, 6, 8},
          {3, 8, 9},  {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
}

Subdivision subdivide(std::size_t num_vertices, std::span<const Triangle> triangles) {
  Subdivision out;
  std::vector<Triplet> weights;
  for (std::size_t v = 0; v < num_vertices; ++v) weights.push_back({v, v, 1.0});

  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> midpoints;
  std::uint32_t next = static_cast<std::uint32_t>(num_vertices);
  auto midpoint = [&](std::uint32_t a, std::uint32_t b) {
    const auto key = std::minmax(a, b);
    auto [it, inserted] = midpoints.try_emplace({key.first, key.second}, next);
    if (inserted) {
      weights.push_back({next, key.first, 0.5});
      weights.push_back({next, key.second, 0.5});
      ++next;
    }
    return it->second;
  };

  for (const auto& tri : triangles) {
    for (auto v : tri) {
      if (v >= num_vertices) throw InvalidArgument("triangle index out of range");
    }
    const auto ab = midpoint(tri[0], tri[1]);
    const auto bc = midpoint(tri[1], tri[2]);
    const auto ca = midpoint(tri[2], tri[0]);
    out.triangles.push_back({tri[0], ab, ca});
    out.triangles.push_back({ab, tri[1], bc});
    out.triangles.push_back({ca, bc, tri[2]});
    out.triangles.push_back({ab, bc, ca});
  }
  out.num_vertices = next;
  out.upsample = CsrMatrix::from_triplets(next, num_vertices, weights);
  return out;
}

}  // namespace faceloc
