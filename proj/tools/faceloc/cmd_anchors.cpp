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

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cli_util.hpp"
#include "faceloc/anchors.hpp"
#include "faceloc/error.hpp"

namespace faceloc::cli {
namespace {

struct AnchorsOptions {
  std::string input_size = "640x640";
  std::string levels;
  std::string pyramid;
  std::string csv;
};

std::vector<PyramidLevelSpec> select_levels(std::vector<PyramidLevelSpec> specs, const std::string& names) {
  if (names.empty()) return specs;
  std::vector<PyramidLevelSpec> picked;
  std::stringstream in(names);
  std::string name;
  while (std::getline(in, name, ',')) {
    const auto it = std::find_if(specs.begin(), specs.end(), [&](const auto& s) { return s.name == name; });
    if (it == specs.end()) throw UsageError("--levels: unknown level '" + name + "'");
    picked.push_back(*it);
  }
  return picked;
}

int run(const AnchorsOptions& opt) {
  const ImageSize size = parse_size(opt.input_size, "input-size");
  auto specs = opt.pyramid.empty() ? default_level_specs() : load_level_specs(opt.pyramid);
  specs = select_levels(std::move(specs), opt.levels);
  const AnchorSet set = generate_anchors(size, specs);

  std::ostringstream out;
  out << "input size: " << size.width << "x" << size.height << "\n";
  out << "level  stride  grid       anchors  scales\n";
  for (const auto& level : set.levels) {
    char line[128];
    std::snprintf(line, sizeof line, "%-6s %-7d %-10s %-8zu", level.name.c_str(), level.stride,
                  (std::to_string(level.grid_width) + "x" + std::to_string(level.grid_height)).c_str(),
                  level.size());
    out << line;
    for (double s : level.scales) {
      std::snprintf(line, sizeof line, " %.2f", s);
      out << line;
    }
    out << "\n";
  }
  out << "total anchors: " << set.size() << "\n";
  for (const auto& level : set.levels) {
    char line[96];
    std::snprintf(line, sizeof line, "share %s: %.2f%%\n", level.name.c_str(),
                  set.size() ? 100.0 * level.size() / set.size() : 0.0);
    out << line;
  }
  std::cout << out.str();

  if (!opt.csv.empty()) {
    std::ostringstream csv;
    csv << "index,level,x,y,w,h\n";
    for (const auto& level : set.levels) {
      for (std::size_t i = level.begin; i < level.end; ++i) {
        const Box& b = set.anchors[i];
        csv << i << ',' << level.name << ',' << format_double(b.x) << ',' << format_double(b.y) << ','
            << format_double(b.w) << ',' << format_double(b.h) << '\n';
      }
    }
    write_text(opt.csv, csv.str());
  }
  return kOk;
}

}  // namespace

Command make_anchors_command(CLI::App& root) {
  auto opt = std::make_shared<AnchorsOptions>();
  Command cmd;
  cmd.app = root.add_subcommand("anchors", "Anchor counts and scales per pyramid level");
  add(cmd, "input-size", opt->input_size, "Network input size WxH");
  add(cmd, "levels", opt->levels, "Comma-separated subset of level names, e.g. P2,P3 (default: all)");
  add(cmd, "pyramid", opt->pyramid, "JSON file with custom level specs");
  add(cmd, "csv", opt->csv, "Write every anchor box to this CSV file");
  cmd.run = [opt] { return run(*opt); };
  return cmd;
}

}  // namespace faceloc::cli
