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
#include <string>
#include <vector>

namespace faceloc {

// RGB image with channels in [0, 1], row-major from the top row, channels
// interleaved.
class Image {
 public:
  Image() = default;
  Image(int width, int height, double fill = 0.0);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t pixel_count() const { return static_cast<std::size_t>(width_) * height_; }

  double& at(int x, int y, int c) { return data_[index(x, y, c)]; }
  double at(int x, int y, int c) const { return data_[index(x, y, c)]; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t index(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * width_ + x) * 3 + c;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

enum class PixelType : unsigned { kUint8 = 0, kFloat32 = 1 };

// Raster container: 8-byte magic "FLRASTER", then little-endian uint32
// version (1), width, height, pixel type, followed by width*height*3 samples
// (uint8 scaled by 255, or IEEE float32), rows top to bottom, RGB interleaved.
void write_raster(const Image& image, const std::string& path, PixelType type = PixelType::kFloat32);
Image read_raster(const std::string& path);

// Binary PPM (P6, maxval 255).
void write_ppm(const Image& image, const std::string& path);
Image read_ppm(const std::string& path);

// Dispatches on the file's magic bytes (raster or P6).
Image read_image(const std::string& path);

}  // namespace faceloc
