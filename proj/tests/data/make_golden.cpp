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

// Regenerates the mesh-demo fixtures in a directory:
//   identity_decoder.json, icosahedron_latent.txt, golden_icosahedron.raster
// The golden vertices come from the dense oracle decode, not the library's
// sparse path, so the CLI comparison checks one against the other.

#include <cstdio>
#include <fstream>
#include <string>

#include "faceloc/image.hpp"
#include "faceloc/render.hpp"
#include "oracles/dense_decoder.hpp"
#include "oracles/fixtures.hpp"

// Scene parameters shared with the CLI golden test.
constexpr int kSize = 96;

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <output-dir>\n", argv[0]);
    return 1;
  }
  const std::string dir = argv[1];
  namespace fl = faceloc;

  const auto dec = fl::fixtures::identity_icosahedron_decoder();
  const auto z = fl::fixtures::icosahedron_latent(1.0);
  fl::save_decoder(dec, dir + "/identity_decoder.json");
  {
    std::ofstream out(dir + "/icosahedron_latent.txt");
    out.precision(17);
    for (double v : z) out << v << '\n';
  }

  const fl::Matrix verts = fl::oracle::from_eigen(fl::oracle::dense_decode(z, dec));
  const fl::CameraParams cam{{0.5, 0.8, 3.0}, {0, 0, 0}, 80.0};
  const fl::IlluminationParams ill{{2.0, 2.0, 3.0}, {0.5, 0.5, 0.5}, {0.25, 0.25, 0.25}};
  const fl::Image img = fl::render(verts, dec.output_triangles(), cam, ill, {kSize, kSize});
  fl::write_raster(img, dir + "/golden_icosahedron.raster");
  return 0;
}
