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

#include <cmath>
#include <vector>

#include "faceloc/mesh.hpp"

namespace faceloc::bench {

struct Icosphere {
  Matrix vertices;  // n x 6, unit sphere, colour from position
  std::vector<Triangle> triangles;
};

inline Icosphere make_icosphere(int levels) {
  Matrix xyz = icosahedron_positions();
  std::vector<Triangle> tris = icosahedron_triangles();
  for (int l = 0; l < levels; ++l) {
    const Subdivision sub = subdivide(xyz.rows(), tris);
    xyz = mesh_upsample(xyz, sub.upsample);
    tris = sub.triangles;
  }
  Icosphere s{Matrix(xyz.rows(), 6), std::move(tris)};
  for (std::size_t i = 0; i < xyz.rows(); ++i) {
    const double n = std::hypot(xyz(i, 0), xyz(i, 1), xyz(i, 2));
    for (int c = 0; c < 3; ++c) {
      s.vertices(i, c) = xyz(i, c) / n;
      s.vertices(i, 3 + c) = 0.5 + 0.5 * xyz(i, c) / n;
    }
  }
  return s;
}

}  // namespace faceloc::bench
