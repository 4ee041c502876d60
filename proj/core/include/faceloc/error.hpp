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
#include <stdexcept>
#include <string>

namespace faceloc {

// Bad argument to a library call (shape mismatch, non-positive size, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Inconsistent decoder/pipeline configuration. `layer` is -1 when the error
// is not tied to a specific decoder layer.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, int layer = -1)
      : std::runtime_error(what), layer_(layer) {}
  int layer() const noexcept { return layer_; }

 private:
  int layer_;
};

// Malformed input data. `line` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::string source = {}, std::size_t line = 0)
      : std::runtime_error(format(what, source, line)),
        source_(std::move(source)),
        line_(line) {}
  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& what, const std::string& source,
                            std::size_t line) {
    std::string msg;
    if (!source.empty()) msg += source;
    if (line > 0) msg += (msg.empty() ? "line " : ":") + std::to_string(line);
    if (!msg.empty()) msg += ": ";
    return msg + what;
  }

  std::string source_;
  std::size_t line_;
};

// The input could not be identified as any supported file format.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace faceloc
