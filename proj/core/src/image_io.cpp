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

#include "faceloc/image.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cctype>
#include <cstring>
#include <fstream>
#include <limits>

#include "faceloc/error.hpp"

namespace faceloc {
namespace {

constexpr char kRasterMagic[8] = {'F', 'L', 'R', 'A', 'S', 'T', 'E', 'R'};
constexpr std::uint32_t kRasterVersion = 1;
constexpr int kMaxDimension = 1 << 16;

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

void put_u32(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> b = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
                                 static_cast<char>((v >> 16) & 0xFF), static_cast<char>((v >> 24) & 0xFF)};
  out.write(b.data(), 4);
}

std::uint32_t get_u32(std::istream& in, const std::string& path) {
  std::array<unsigned char, 4> b{};
  if (!in.read(reinterpret_cast<char*>(b.data()), 4)) throw ParseError("truncated raster header", path);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void check_dims(std::int64_t w, std::int64_t h, const std::string& path) {
  if (w < 1 || h < 1 || w > kMaxDimension || h > kMaxDimension) {
    throw ParseError("image dimensions out of range", path);
  }
}

std::string read_token(std::istream& in) {
  std::string token;
  char c = 0;
  while (in.get(c)) {
    if (c == '#') {
      std::string skip;
      std::getline(in, skip);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!token.empty()) break;
      continue;
    }
    token.push_back(c);
  }
  return token;
}

}  // namespace

Image::Image(int width, int height, double fill) : width_(width), height_(height) {
  if (width < 0 || height < 0) throw InvalidArgument("image dimensions must be non-negative");
  data_.assign(static_cast<std::size_t>(width) * height * 3, fill);
}

void write_raster(const Image& image, const std::string& path, PixelType type) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write file", path);
  out.write(kRasterMagic, sizeof(kRasterMagic));
  put_u32(out, kRasterVersion);
  put_u32(out, static_cast<std::uint32_t>(image.width()));
  put_u32(out, static_cast<std::uint32_t>(image.height()));
  put_u32(out, static_cast<std::uint32_t>(type));
  if (type == PixelType::kUint8) {
    std::vector<char> bytes(image.data().size());
    std::transform(image.data().begin(), image.data().end(), bytes.begin(),
                   [](double v) { return static_cast<char>(to_byte(v)); });
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  } else {
    for (double v : image.data()) put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  }
  if (!out) throw ParseError("write failed", path);
}

Image read_raster(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file", path);
  char magic[8] = {};
  if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kRasterMagic, sizeof(magic)) != 0) {
    throw FormatError(path + ": not a faceloc raster file");
  }
  const auto version = get_u32(in, path);
  if (version != kRasterVersion) throw FormatError(path + ": unsupported raster version");
  const auto w = get_u32(in, path);
  const auto h = get_u32(in, path);
  const auto type = get_u32(in, path);
  check_dims(w, h, path);
  Image image(static_cast<int>(w), static_cast<int>(h));
  auto& data = image.data();
  if (type == static_cast<std::uint32_t>(PixelType::kUint8)) {
    std::vector<unsigned char> bytes(data.size());
    if (!in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()))) {
      throw ParseError("truncated pixel data", path);
    }
    for (std::size_t i = 0; i < bytes.size(); ++i) data[i] = bytes[i] / 255.0;
  } else if (type == static_cast<std::uint32_t>(PixelType::kFloat32)) {
    for (auto& v : data) v = std::bit_cast<float>(get_u32(in, path));
  } else {
    throw FormatError(path + ": unknown raster pixel type " + std::to_string(type));
  }
  return image;
}

void write_ppm(const Image& image, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write file", path);
  out << "P6\n" << image.width() << ' ' << image.height() << "\n255\n";
  std::vector<char> bytes(image.data().size());
  std::transform(image.data().begin(), image.data().end(), bytes.begin(),
                 [](double v) { return static_cast<char>(to_byte(v)); });
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ParseError("write failed", path);
}

Image read_ppm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file", path);
  if (read_token(in) != "P6") throw FormatError(path + ": not a binary PPM (P6) file");
  std::int64_t w = 0, h = 0, maxval = 0;
  try {
    w = std::stoll(read_token(in));
    h = std::stoll(read_token(in));
    maxval = std::stoll(read_token(in));
  } catch (const std::exception&) {
    throw ParseError("malformed PPM header", path);
  }
  check_dims(w, h, path);
  if (maxval != 255) throw ParseError("only 8-bit PPM (maxval 255) is supported", path);
  Image image(static_cast<int>(w), static_cast<int>(h));
  std::vector<unsigned char> bytes(image.data().size());
  if (!in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()))) {
    throw ParseError("truncated pixel data", path);
  }
  for (std::size_t i = 0; i < bytes.size(); ++i) image.data()[i] = bytes[i] / 255.0;
  return image;
}

Image read_image(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file", path);
  char head[2] = {};
  in.read(head, 2);
  if (head[0] == 'P' && head[1] == '6') return read_ppm(path);
  if (head[0] == 'F' && head[1] == 'L') return read_raster(path);
  throw FormatError(path + ": unrecognised image format");
}

}  // namespace faceloc
