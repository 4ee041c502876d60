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

#include "faceloc/annotations.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "faceloc/error.hpp"

namespace faceloc {
namespace {

struct Line {
  std::string text;
  std::size_t number = 0;
};

std::vector<Line> split_lines(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t");
    lines.push_back({line.substr(first, last - first + 1), number});
  }
  return lines;
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

bool to_double(const std::string& t, double& v) {
  try {
    std::size_t used = 0;
    v = std::stod(t, &used);
    return used == t.size();
  } catch (const std::exception&) {
    return false;
  }
}

bool to_int(const std::string& t, int& v) {
  try {
    std::size_t used = 0;
    v = std::stoi(t, &used);
    return used == t.size();
  } catch (const std::exception&) {
    return false;
  }
}

std::vector<double> numbers(const Line& line, const std::string& source) {
  std::vector<double> out;
  for (const auto& t : tokens(line.text)) {
    double v = 0.0;
    if (!to_double(t, v)) throw ParseError("invalid number '" + t + "'", source, line.number);
    out.push_back(v);
  }
  return out;
}

int as_int(double v, const Line& line, const std::string& source) {
  if (v != std::floor(v)) throw ParseError("expected an integer field", source, line.number);
  return static_cast<int>(v);
}

void flag_negative_size(FaceAnnotation& face) {
  if (face.box.w < 0.0 || face.box.h < 0.0) face.attributes[kInvalid] = 1;
}

void check(const FaceAnnotation& face, const Line& line, const std::string& source) {
  try {
    validate_annotation(face);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), source, line.number);
  }
}

std::vector<ImageAnnotations> parse_benchmark(const std::vector<Line>& lines, const std::string& source) {
  std::vector<ImageAnnotations> images;
  std::size_t i = 0;
  while (i < lines.size()) {
    ImageAnnotations image;
    image.image = lines[i].text;
    ++i;
    if (i >= lines.size()) throw ParseError("missing face count after image path", source, lines[i - 1].number);
    int count = 0;
    if (!to_int(lines[i].text, count) || count < 0) {
      throw ParseError("invalid face count '" + lines[i].text + "'", source, lines[i].number);
    }
    ++i;
    if (count == 0 && i < lines.size()) {
      // Empty entries may carry one all-zero placeholder row.
      const auto t = tokens(lines[i].text);
      if (t.size() >= 10 && std::all_of(t.begin(), t.end(), [](const std::string& s) {
            double v = 0.0;
            return to_double(s, v) && v == 0.0;
          })) {
        ++i;
      }
    }
    for (int f = 0; f < count; ++f, ++i) {
      if (i >= lines.size()) throw ParseError("expected " + std::to_string(count) + " face lines", source,
                                              lines.back().number);
      const auto v = numbers(lines[i], source);
      if (v.size() != 10 && v.size() != 11) {
        throw ParseError("face line needs 10 or 11 fields, got " + std::to_string(v.size()), source,
                         lines[i].number);
      }
      FaceAnnotation face;
      face.box = {v[0], v[1], v[2], v[3]};
      for (int a = 0; a < kNumAttributes; ++a) face.attributes[a] = as_int(v[4 + a], lines[i], source);
      if (v.size() == 11) face.difficulty = as_int(v[10], lines[i], source);
      flag_negative_size(face);
      check(face, lines[i], source);
      image.faces.push_back(face);
    }
    images.push_back(std::move(image));
  }
  return images;
}

std::vector<ImageAnnotations> parse_landmark(const std::vector<Line>& lines, const std::string& source) {
  std::vector<ImageAnnotations> images;
  for (const auto& line : lines) {
    if (line.text[0] == '#') {
      ImageAnnotations image;
      const auto start = line.text.find_first_not_of(" \t", 1);
      image.image = start == std::string::npos ? std::string() : line.text.substr(start);
      if (image.image.empty()) throw ParseError("empty image path", source, line.number);
      images.push_back(std::move(image));
      continue;
    }
    if (images.empty()) throw ParseError("face line before the first '# image' header", source, line.number);
    const auto v = numbers(line, source);
    if (v.size() != 19 && v.size() != 20) {
      throw ParseError("landmark line needs 19 or 20 fields, got " + std::to_string(v.size()), source, line.number);
    }
    FaceAnnotation face;
    face.box = {v[0], v[1], v[2], v[3]};
    bool all_absent = true;
    LandmarkAnnotation pts{};
    for (int k = 0; k < kNumLandmarks; ++k) {
      const double x = v[4 + 3 * k], y = v[5 + 3 * k], vis = v[6 + 3 * k];
      const bool absent = x == -1.0 && y == -1.0 && vis == -1.0;
      all_absent = all_absent && absent;
      if (!absent && vis != 0.0 && vis != 1.0) {
        throw ParseError("landmark visibility must be 0, 1 or -1", source, line.number);
      }
      pts[k] = {{x, y}, !absent && vis == 1.0};
    }
    if (!all_absent) face.landmarks = pts;
    face.quality_level = v.size() == 20 ? as_int(v[19], line, source)
                                        : (face.landmarks ? kDefaultLandmarkQuality : kBoxOnlyQuality);
    flag_negative_size(face);
    check(face, line, source);
    images.back().faces.push_back(face);
  }
  return images;
}

std::vector<ImageAnnotations> parse_canonical(const std::vector<Line>& lines, const std::string& source) {
  using nlohmann::json;
  std::vector<ImageAnnotations> images;
  for (const auto& line : lines) {
    json obj;
    try {
      obj = json::parse(line.text);
      const auto image = obj.at("image").get<std::string>();
      if (images.empty() || images.back().image != image) images.push_back({image, {}});
      if (!obj.contains("box") || obj.at("box").is_null()) continue;
      FaceAnnotation face;
      const auto b = obj.at("box").get<std::array<double, 4>>();
      face.box = {b[0], b[1], b[2], b[3]};
      if (obj.contains("landmarks") && !obj.at("landmarks").is_null()) {
        LandmarkAnnotation pts{};
        const auto& arr = obj.at("landmarks");
        if (arr.size() != kNumLandmarks) throw ParseError("expected 5 landmarks", source, line.number);
        for (int k = 0; k < kNumLandmarks; ++k) {
          pts[k] = {{arr[k].at(0).get<double>(), arr[k].at(1).get<double>()}, arr[k].at(2).get<int>() == 1};
        }
        face.landmarks = pts;
      }
      face.quality_level = obj.value("quality", face.landmarks ? kDefaultLandmarkQuality : kBoxOnlyQuality);
      if (obj.contains("attributes")) face.attributes = obj.at("attributes").get<std::array<int, kNumAttributes>>();
      face.difficulty = obj.value("difficulty", -1);
      flag_negative_size(face);
      check(face, line, source);
      images.back().faces.push_back(face);
    } catch (const json::exception& e) {
      throw ParseError(std::string("invalid record: ") + e.what(), source, line.number);
    }
  }
  return images;
}

std::string num(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

}  // namespace

std::string to_string(AnnotationFormat format) {
  switch (format) {
    case AnnotationFormat::kBenchmark: return "benchmark";
    case AnnotationFormat::kLandmark: return "landmark";
    case AnnotationFormat::kCanonical: return "canonical";
  }
  return "unknown";
}

void validate_annotation(const FaceAnnotation& face) {
  if (face.quality_level < 1 || face.quality_level > 5) {
    throw InvalidArgument("quality level must be in 1..5, got " + std::to_string(face.quality_level));
  }
  if (face.quality_level == kBoxOnlyQuality && face.landmarks) {
    throw InvalidArgument("quality level 5 faces are box-only but landmarks are present");
  }
  if (face.quality_level < kBoxOnlyQuality && !face.landmarks) {
    throw InvalidArgument("quality level " + std::to_string(face.quality_level) + " requires landmarks");
  }
}

AnnotationFormat detect_annotation_format(const std::string& text) {
  const auto lines = split_lines(text);
  if (lines.empty()) return AnnotationFormat::kCanonical;  // nothing to parse
  const char first = lines[0].text[0];
  if (first == '{') return AnnotationFormat::kCanonical;
  if (first == '#') return AnnotationFormat::kLandmark;
  int count = 0;
  if (lines.size() >= 2 && to_int(lines[1].text, count) && count >= 0) return AnnotationFormat::kBenchmark;
  throw FormatError("unrecognised annotation format");
}

std::vector<ImageAnnotations> parse_annotations(const std::string& text, const std::string& source) {
  AnnotationFormat format;
  try {
    format = detect_annotation_format(text);
  } catch (const FormatError& e) {
    throw FormatError((source.empty() ? "" : source + ": ") + e.what());
  }
  return parse_annotations(text, format, source);
}

std::vector<ImageAnnotations> parse_annotations(const std::string& text, AnnotationFormat format,
                                                const std::string& source) {
  const auto lines = split_lines(text);
  switch (format) {
    case AnnotationFormat::kBenchmark: return parse_benchmark(lines, source);
    case AnnotationFormat::kLandmark: return parse_landmark(lines, source);
    case AnnotationFormat::kCanonical: return parse_canonical(lines, source);
  }
  throw FormatError("unknown annotation format");
}

std::vector<ImageAnnotations> load_annotations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file", path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_annotations(buffer.str(), path);
}

std::string write_annotations(std::span<const ImageAnnotations> images, AnnotationFormat format) {
  std::ostringstream out;
  for (const auto& image : images) {
    switch (format) {
      case AnnotationFormat::kBenchmark:
        out << image.image << '\n' << image.faces.size() << '\n';
        if (image.faces.empty()) out << "0 0 0 0 0 0 0 0 0 0\n";
        for (const auto& f : image.faces) {
          out << num(f.box.x) << ' ' << num(f.box.y) << ' ' << num(f.box.w) << ' ' << num(f.box.h);
          for (int a : f.attributes) out << ' ' << a;
          if (f.difficulty >= 0) out << ' ' << f.difficulty;
          out << '\n';
        }
        break;
      case AnnotationFormat::kLandmark:
        out << "# " << image.image << '\n';
        for (const auto& f : image.faces) {
          out << num(f.box.x) << ' ' << num(f.box.y) << ' ' << num(f.box.w) << ' ' << num(f.box.h);
          for (int k = 0; k < kNumLandmarks; ++k) {
            if (f.landmarks) {
              const auto& p = (*f.landmarks)[k];
              out << ' ' << num(p.point.x) << ' ' << num(p.point.y) << ' ' << (p.visible ? 1 : 0);
            } else {
              out << " -1 -1 -1";
            }
          }
          out << ' ' << f.quality_level << '\n';
        }
        break;
      case AnnotationFormat::kCanonical: {
        using nlohmann::json;
        if (image.faces.empty()) out << json{{"image", image.image}}.dump() << '\n';
        for (const auto& f : image.faces) {
          json obj;
          obj["image"] = image.image;
          obj["box"] = {f.box.x, f.box.y, f.box.w, f.box.h};
          if (f.landmarks) {
            json pts = json::array();
            for (const auto& p : *f.landmarks) pts.push_back({p.point.x, p.point.y, p.visible ? 1 : 0});
            obj["landmarks"] = pts;
          } else {
            obj["landmarks"] = nullptr;
          }
          obj["quality"] = f.quality_level;
          obj["attributes"] = f.attributes;
          obj["difficulty"] = f.difficulty;
          out << obj.dump() << '\n';
        }
        break;
      }
    }
  }
  return out.str();
}

void save_annotations(std::span<const ImageAnnotations> images, AnnotationFormat format, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write file", path);
  out << write_annotations(images, format);
}

}  // namespace faceloc
