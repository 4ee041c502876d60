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
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "faceloc/anchors.hpp"
#include "faceloc/render.hpp"

namespace faceloc::cli {

enum ExitCode { kOk = 0, kUsage = 1, kDataError = 2, kInternal = 3 };

// Bad flag value or combination; maps to the usage exit code.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Option setters keyed by long flag name, used to apply a JSON config file on
// top of the parsed command line.
using Overrides = std::map<std::string, std::function<void(const nlohmann::json&)>>;

struct Command {
  CLI::App* app = nullptr;
  Overrides overrides;
  std::function<int()> run;
};

template <class T>
CLI::Option* add(Command& cmd, const std::string& name, T& var, const std::string& help) {
  cmd.overrides[name] = [&var](const nlohmann::json& j) { var = j.get<T>(); };
  return cmd.app->add_option("--" + name, var, help)->capture_default_str();
}

inline CLI::Option* add_flag(Command& cmd, const std::string& name, bool& var, const std::string& help) {
  cmd.overrides[name] = [&var](const nlohmann::json& j) { var = j.get<bool>(); };
  return cmd.app->add_flag("--" + name, var, help);
}

// Applies {"<subcommand>": {"<flag>": value, ...}} from a JSON file.
void apply_config(const std::string& path, const std::string& subcommand, const Overrides& overrides);

ImageSize parse_size(const std::string& text, const std::string& flag);
Vec3 parse_vec3(const std::string& text, const std::string& flag);
std::array<double, 3> parse_rgb(const std::string& text, const std::string& flag);

std::string format_double(double v, int digits = 17);
std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

// Deterministic per-sample seed stream.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

Command make_anchors_command(CLI::App& root);
Command make_evaluate_command(CLI::App& root);
Command make_mesh_demo_command(CLI::App& root);
Command make_augment_command(CLI::App& root);
Command make_convert_annotations_command(CLI::App& root);
Command make_convert_image_command(CLI::App& root);

}  // namespace faceloc::cli
