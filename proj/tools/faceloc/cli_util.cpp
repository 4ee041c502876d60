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

#include "cli_util.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "faceloc/error.hpp"

namespace faceloc::cli {
namespace {

std::vector<double> split_numbers(const std::string& text, char sep, std::size_t count, const std::string& flag) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, sep)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw UsageError("--" + flag + ": invalid number '" + part + "'");
    }
  }
  if (out.size() != count) {
    throw UsageError("--" + flag + ": expected " + std::to_string(count) + " values, got '" + text + "'");
  }
  return out;
}

}  // namespace

void apply_config(const std::string& path, const std::string& subcommand, const Overrides& overrides) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config " + path + ": " + e.what());
  }
  if (!doc.is_object()) throw UsageError("config " + path + ": top level must be an object");
  if (!doc.contains(subcommand)) return;
  const auto& section = doc.at(subcommand);
  if (!section.is_object()) throw UsageError("config " + path + ": '" + subcommand + "' must be an object");
  for (const auto& [key, value] : section.items()) {
    const auto it = overrides.find(key);
    if (it == overrides.end()) throw UsageError("config " + path + ": unknown option '" + key + "' for " + subcommand);
    try {
      it->second(value);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("config " + path + ": bad value for '" + key + "': " + e.what());
    }
  }
}

ImageSize parse_size(const std::string& text, const std::string& flag) {
  const auto v = split_numbers(text, 'x', 2, flag);
  if (v[0] < 1 || v[1] < 1 || v[0] != static_cast<int>(v[0]) || v[1] != static_cast<int>(v[1])) {
    throw UsageError("--" + flag + ": expected positive integers WxH, got '" + text + "'");
  }
  return {static_cast<int>(v[0]), static_cast<int>(v[1])};
}

Vec3 parse_vec3(const std::string& text, const std::string& flag) {
  const auto v = split_numbers(text, ',', 3, flag);
  return {v[0], v[1], v[2]};
}

std::array<double, 3> parse_rgb(const std::string& text, const std::string& flag) {
  const auto v = split_numbers(text, ',', 3, flag);
  for (double c : v) {
    if (!(c >= 0.0 && c <= 1.0)) throw UsageError("--" + flag + ": colour components must lie in [0, 1]");
  }
  return {v[0], v[1], v[2]};
}

std::string format_double(double v, int digits) {
  std::ostringstream out;
  out << std::setprecision(digits) << v;
  return out.str();
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file", path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write file", path);
  out << text;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finaliser over (seed, stream).
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace faceloc::cli
