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

#include <iostream>

#include "cli_util.hpp"
#include "faceloc/error.hpp"

int main(int argc, char** argv) {
  namespace cli = faceloc::cli;
  CLI::App app{"faceloc: single-stage face localisation toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "faceloc 1.0.0");
  std::string config;
  app.add_option("--config", config,
                 "JSON file {\"<subcommand>\": {\"<flag>\": value}}; its values override command-line flags");

  std::vector<cli::Command> commands;
  commands.push_back(cli::make_anchors_command(app));
  commands.push_back(cli::make_evaluate_command(app));
  commands.push_back(cli::make_mesh_demo_command(app));
  commands.push_back(cli::make_augment_command(app));
  commands.push_back(cli::make_convert_annotations_command(app));
  commands.push_back(cli::make_convert_image_command(app));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kOk : cli::kUsage;
  }

  try {
    for (auto& cmd : commands) {
      if (!cmd.app->parsed()) continue;
      if (!config.empty()) cli::apply_config(config, cmd.app->get_name(), cmd.overrides);
      return cmd.run();
    }
    return cli::kUsage;
  } catch (const cli::UsageError& e) {
    std::cerr << "error: " << e.what() << "\nRun with --help for usage.\n";
    return cli::kUsage;
  } catch (const faceloc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return cli::kDataError;
  } catch (const faceloc::FormatError& e) {
    std::cerr << "format error: " << e.what() << '\n';
    return cli::kDataError;
  } catch (const faceloc::ConfigError& e) {
    std::cerr << "config error: " << e.what();
    if (e.layer() >= 0) std::cerr << " (layer " << e.layer() << ')';
    std::cerr << '\n';
    return cli::kDataError;
  } catch (const faceloc::InvalidArgument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return cli::kDataError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return cli::kInternal;
  }
}
