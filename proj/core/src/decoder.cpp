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

#include "faceloc/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "faceloc/error.hpp"

namespace faceloc {
namespace {

constexpr const char* kFormatName = "faceloc-mesh-decoder";
constexpr int kFormatVersion = 1;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file", path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void apply_activation(Matrix& m, Activation activation) {
  if (activation == Activation::kRelu) {
    for (double& v : m.data()) v = std::max(v, 0.0);
  }
}

}  // namespace

void ShapeTextureParams::validate() const {
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidArgument("shape/texture latent has a non-finite entry");
  }
}

Activation activation_from_string(const std::string& name) {
  if (name == "relu") return Activation::kRelu;
  if (name == "identity" || name == "linear" || name == "none") return Activation::kIdentity;
  throw ConfigError("unknown activation '" + name + "'");
}

std::string to_string(Activation activation) {
  return activation == Activation::kRelu ? "relu" : "identity";
}

void MeshDecoder::validate() const {
  if (latent_dim == 0) throw ConfigError("latent dimension must be positive");
  if (coarse_vertices == 0 || coarse_channels == 0) throw ConfigError("empty coarse mesh expansion");
  const std::size_t expanded = coarse_vertices * coarse_channels;
  if (dense_weight.rows() != expanded || dense_weight.cols() != latent_dim) {
    throw ConfigError("dense expansion weight must be " + std::to_string(expanded) + "x" +
                      std::to_string(latent_dim));
  }
  if (dense_bias.size() != expanded) throw ConfigError("dense expansion bias has wrong length");
  if (layers.empty()) throw ConfigError("decoder has no layers");

  std::size_t n = coarse_vertices;
  std::size_t c = coarse_channels;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto& layer = layers[i];
    const int idx = static_cast<int>(i);
    auto fail = [idx](const std::string& msg) {
      throw ConfigError("layer " + std::to_string(idx) + ": " + msg, idx);
    };
    if (layer.upsample) {
      if (layer.upsample->cols() != n) {
        fail("up-sampling expects " + std::to_string(layer.upsample->cols()) +
             " input vertices, previous stage produces " + std::to_string(n));
      }
      n = layer.upsample->rows();
    }
    if (layer.num_vertices != n) {
      fail("mesh has " + std::to_string(layer.num_vertices) + " vertices, incoming features have " +
           std::to_string(n));
    }
    if (layer.filter.in_channels() != c) {
      fail("filter expects " + std::to_string(layer.filter.in_channels()) + " input channels, got " +
           std::to_string(c));
    }
    if (layer.bias.size() != layer.filter.out_channels()) fail("bias length differs from output channels");
    c = layer.filter.out_channels();
  }
  if (c != MeshGraph::kAttributes) {
    throw ConfigError("final layer must output 6 channels (xyz + rgb), got " + std::to_string(c),
                      static_cast<int>(layers.size()) - 1);
  }
}

void MeshDecoder::finalize() {
  validate();
  for (std::size_t i = 0; i < layers.size(); ++i) {
    auto& layer = layers[i];
    try {
      const auto adjacency = MeshGraph::adjacency_from_triangles(layer.num_vertices, layer.triangles);
      layer.scaled_laplacian = scale_laplacian(build_laplacian(adjacency));
    } catch (const InvalidArgument& e) {
      throw ConfigError("layer " + std::to_string(i) + ": " + e.what(), static_cast<int>(i));
    }
  }
}

std::size_t MeshDecoder::output_vertices() const {
  return layers.empty() ? coarse_vertices : layers.back().num_vertices;
}

const std::vector<Triangle>& MeshDecoder::output_triangles() const {
  static const std::vector<Triangle> kEmpty;
  return layers.empty() ? kEmpty : layers.back().triangles;
}

Matrix decode(std::span<const double> latent, const MeshDecoder& decoder) {
  if (latent.size() != decoder.latent_dim) {
    throw ConfigError("latent has " + std::to_string(latent.size()) + " entries, decoder expects " +
                      std::to_string(decoder.latent_dim));
  }
  for (double v : latent) {
    if (!std::isfinite(v)) throw InvalidArgument("latent has a non-finite entry");
  }
  for (std::size_t i = 0; i < decoder.layers.size(); ++i) {
    if (decoder.layers[i].scaled_laplacian.rows() != decoder.layers[i].num_vertices) {
      throw ConfigError("layer " + std::to_string(i) + " is not finalized", static_cast<int>(i));
    }
  }

  Matrix x(decoder.coarse_vertices, decoder.coarse_channels);
  auto flat = x.data();
  for (std::size_t r = 0; r < flat.size(); ++r) {
    const auto w = decoder.dense_weight.row(r);
    double sum = decoder.dense_bias[r];
    for (std::size_t j = 0; j < latent.size(); ++j) sum += w[j] * latent[j];
    flat[r] = sum;
  }

  for (std::size_t i = 0; i < decoder.layers.size(); ++i) {
    const auto& layer = decoder.layers[i];
    try {
      if (layer.upsample) x = mesh_upsample(x, *layer.upsample);
      x = cheb_conv(x, layer.filter, layer.scaled_laplacian);
    } catch (const InvalidArgument& e) {
      throw ConfigError("layer " + std::to_string(i) + ": " + e.what(), static_cast<int>(i));
    }
    for (std::size_t v = 0; v < x.rows(); ++v) {
      auto row = x.row(v);
      for (std::size_t c = 0; c < row.size(); ++c) row[c] += layer.bias[c];
    }
    apply_activation(x, layer.activation);
  }
  if (x.cols() != MeshGraph::kAttributes) throw ConfigError("decoder output is not n x 6");
  for (std::size_t v = 0; v < x.rows(); ++v) {
    for (std::size_t c = 3; c < 6; ++c) x(v, c) = std::clamp(x(v, c), 0.0, 1.0);
  }
  return x;
}

Matrix decode(const ShapeTextureParams& params, const MeshDecoder& decoder) {
  params.validate();
  return decode(std::span<const double>(params.values), decoder);
}

MeshDecoder decoder_from_json(const std::string& text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("decoder file is not valid JSON: ") + e.what());
  }
  if (doc.value("format", std::string()) != kFormatName) {
    throw FormatError("not a faceloc mesh decoder file");
  }
  if (doc.value("version", 0) != kFormatVersion) {
    throw FormatError("unsupported decoder file version " + std::to_string(doc.value("version", 0)));
  }

  MeshDecoder dec;
  int current_layer = -1;
  try {
    dec.latent_dim = doc.at("latent_dim").get<std::size_t>();
    const auto& dense = doc.at("dense");
    dec.coarse_vertices = dense.at("vertices").get<std::size_t>();
    dec.coarse_channels = dense.at("channels").get<std::size_t>();
    const auto weight = dense.at("weight").get<std::vector<double>>();
    const std::size_t rows = dec.coarse_vertices * dec.coarse_channels;
    if (weight.size() != rows * dec.latent_dim) throw ConfigError("dense weight has wrong length");
    dec.dense_weight = Matrix(rows, dec.latent_dim);
    std::copy(weight.begin(), weight.end(), dec.dense_weight.data().begin());
    dec.dense_bias = dense.at("bias").get<std::vector<double>>();

    for (const auto& item : doc.at("layers")) {
      ++current_layer;
      DecoderLayer layer;
      layer.num_vertices = item.at("vertices").get<std::size_t>();
      for (const auto& tri : item.at("triangles")) layer.triangles.push_back(tri.get<Triangle>());
      if (item.contains("upsample") && !item.at("upsample").is_null()) {
        const auto& up = item.at("upsample");
        std::vector<Triplet> entries;
        for (const auto& e : up.at("entries")) {
          entries.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(), e.at(2).get<double>()});
        }
        layer.upsample = CsrMatrix::from_triplets(up.at("rows").get<std::size_t>(),
                                                  up.at("cols").get<std::size_t>(), entries);
      }
      layer.filter = ChebFilter(item.at("order").get<std::size_t>(), item.at("in_channels").get<std::size_t>(),
                                item.at("out_channels").get<std::size_t>(),
                                item.at("theta").get<std::vector<double>>());
      layer.bias = item.at("bias").get<std::vector<double>>();
      layer.activation = activation_from_string(item.value("activation", std::string("relu")));
      dec.layers.push_back(std::move(layer));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed decoder file: ") + e.what(), current_layer);
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("malformed decoder file: ") + e.what(), current_layer);
  }
  dec.finalize();
  return dec;
}

std::string decoder_to_json(const MeshDecoder& decoder) {
  using nlohmann::json;
  json doc;
  doc["format"] = kFormatName;
  doc["version"] = kFormatVersion;
  doc["latent_dim"] = decoder.latent_dim;
  const auto w = decoder.dense_weight.data();
  doc["dense"] = {{"vertices", decoder.coarse_vertices},
                  {"channels", decoder.coarse_channels},
                  {"weight", std::vector<double>(w.begin(), w.end())},
                  {"bias", decoder.dense_bias}};
  json layers = json::array();
  for (const auto& layer : decoder.layers) {
    json item;
    item["vertices"] = layer.num_vertices;
    item["triangles"] = layer.triangles;
    if (layer.upsample) {
      json entries = json::array();
      for (auto t : layer.upsample->to_triplets()) entries.push_back({t.row, t.col, t.value});
      item["upsample"] = {{"rows", layer.upsample->rows()}, {"cols", layer.upsample->cols()}, {"entries", entries}};
    } else {
      item["upsample"] = nullptr;
    }
    const auto theta = layer.filter.coefficients();
    item["order"] = layer.filter.order();
    item["in_channels"] = layer.filter.in_channels();
    item["out_channels"] = layer.filter.out_channels();
    item["theta"] = std::vector<double>(theta.begin(), theta.end());
    item["bias"] = layer.bias;
    item["activation"] = to_string(layer.activation);
    layers.push_back(std::move(item));
  }
  doc["layers"] = std::move(layers);
  return doc.dump();
}

MeshDecoder load_decoder(const std::string& path) {
  const auto text = read_file(path);
  try {
    return decoder_from_json(text);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what(), e.layer());
  }
}

void save_decoder(const MeshDecoder& decoder, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write file", path);
  out << decoder_to_json(decoder) << '\n';
}

std::vector<double> load_latent(const std::string& path) {
  const auto text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    try {
      return nlohmann::json::parse(text).get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("invalid latent array: ") + e.what(), path);
    }
  }
  std::vector<double> values;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw ParseError("invalid number '" + token + "' in latent file", path);
    }
  }
  return values;
}

}  // namespace faceloc
