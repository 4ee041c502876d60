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

#include "faceloc/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "faceloc/error.hpp"

namespace faceloc {
namespace {

constexpr double kNearPlane = 1e-6;

Vec3 sub(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
Vec3 scaled(const Vec3& a, double s) { return {a.x * s, a.y * s, a.z * s}; }

struct ViewBasis {
  Vec3 right;
  Vec3 up;
  Vec3 forward;
};

ViewBasis view_basis(const CameraParams& camera) {
  const Vec3 dir = sub(camera.look_at, camera.position);
  const Vec3 forward = scaled(dir, 1.0 / norm(dir));
  const Vec3 world_up{0.0, 1.0, 0.0};
  Vec3 right = cross(forward, world_up);
  const double rn = norm(right);
  if (rn < 1e-12) throw InvalidArgument("camera viewing direction is parallel to the +Y up vector");
  right = scaled(right, 1.0 / rn);
  return {right, cross(right, forward), forward};
}

Vec3 vertex_position(const Matrix& vertices, std::size_t i) {
  return {vertices(i, 0), vertices(i, 1), vertices(i, 2)};
}

void check_unit(const std::array<double, 3>& c, const char* what) {
  for (double v : c) {
    if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument(std::string(what) + " must lie in [0, 1]");
  }
}

double edge(double ax, double ay, double bx, double by, double px, double py) {
  return (bx - ax) * (py - ay) - (by - ay) * (px - ax);
}

}  // namespace

void CameraParams::validate() const {
  if (!(focal > 0.0)) throw InvalidArgument("focal length must be positive");
  if (position == look_at) throw InvalidArgument("camera position coincides with its look-at target");
}

std::array<double, 7> CameraParams::as_array() const {
  return {position.x, position.y, position.z, look_at.x, look_at.y, look_at.z, focal};
}

CameraParams CameraParams::from_array(std::span<const double, 7> v) {
  return {{v[0], v[1], v[2]}, {v[3], v[4], v[5]}, v[6]};
}

void IlluminationParams::validate() const {
  check_unit(light_color, "light colour");
  check_unit(ambient, "ambient colour");
}

std::array<double, 9> IlluminationParams::as_array() const {
  return {light_position.x, light_position.y, light_position.z, light_color[0], light_color[1],
          light_color[2],   ambient[0],       ambient[1],       ambient[2]};
}

IlluminationParams IlluminationParams::from_array(std::span<const double, 9> v) {
  return {{v[0], v[1], v[2]}, {v[3], v[4], v[5]}, {v[6], v[7], v[8]}};
}

std::vector<ProjectedVertex> project_vertices(const Matrix& vertices, const CameraParams& camera,
                                              ImageSize image_size) {
  camera.validate();
  if (vertices.cols() < 3) throw InvalidArgument("vertices need at least xyz columns");
  const ViewBasis basis = view_basis(camera);
  const double cx = 0.5 * image_size.width;
  const double cy = 0.5 * image_size.height;
  std::vector<ProjectedVertex> out(vertices.rows());
  for (std::size_t i = 0; i < vertices.rows(); ++i) {
    const Vec3 rel = sub(vertex_position(vertices, i), camera.position);
    const double xc = dot(rel, basis.right);
    const double yc = dot(rel, basis.up);
    const double zc = dot(rel, basis.forward);
    out[i].depth = zc;
    if (zc > kNearPlane) {
      out[i].x = cx + camera.focal * xc / zc;
      out[i].y = cy - camera.focal * yc / zc;
    } else {
      out[i].x = out[i].y = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return out;
}

Image render(const Matrix& vertices, std::span<const Triangle> triangles, const CameraParams& camera,
             const IlluminationParams& illumination, ImageSize image_size) {
  if (image_size.width <= 0 || image_size.height <= 0) throw InvalidArgument("output size must be positive");
  if (vertices.rows() == 0) throw InvalidArgument("mesh has no vertices");
  if (vertices.cols() != MeshGraph::kAttributes) throw InvalidArgument("vertices must be n x 6");
  illumination.validate();

  const int width = image_size.width;
  const int height = image_size.height;
  Image image(width, height);
  std::vector<double> depth(image.pixel_count(), std::numeric_limits<double>::infinity());
  const auto projected = project_vertices(vertices, camera, image_size);

  for (const auto& tri : triangles) {
    for (auto v : tri) {
      if (v >= vertices.rows()) throw InvalidArgument("triangle index out of range");
    }
    const auto& p0 = projected[tri[0]];
    const auto& p1 = projected[tri[1]];
    const auto& p2 = projected[tri[2]];
    if (p0.depth <= kNearPlane || p1.depth <= kNearPlane || p2.depth <= kNearPlane) continue;
    const double area = edge(p0.x, p0.y, p1.x, p1.y, p2.x, p2.y);
    if (std::abs(area) < 1e-12) continue;
    const double sign = area > 0.0 ? 1.0 : -1.0;
    const double inv_area = 1.0 / std::abs(area);

    // Flat shading with the face normal turned towards the camera.
    const Vec3 w0 = vertex_position(vertices, tri[0]);
    const Vec3 w1 = vertex_position(vertices, tri[1]);
    const Vec3 w2 = vertex_position(vertices, tri[2]);
    Vec3 normal = cross(sub(w1, w0), sub(w2, w0));
    const Vec3 centroid = scaled({w0.x + w1.x + w2.x, w0.y + w1.y + w2.y, w0.z + w1.z + w2.z}, 1.0 / 3.0);
    double lambert = 0.0;
    const double nn = norm(normal);
    if (nn > 0.0) {
      normal = scaled(normal, 1.0 / nn);
      if (dot(normal, sub(camera.position, centroid)) < 0.0) normal = scaled(normal, -1.0);
      const Vec3 to_light = sub(illumination.light_position, centroid);
      const double ln = norm(to_light);
      if (ln > 0.0) lambert = std::max(0.0, dot(normal, to_light) / ln);
    }
    std::array<double, 3> shade{};
    for (int c = 0; c < 3; ++c) shade[c] = illumination.ambient[c] + illumination.light_color[c] * lambert;

    const double min_x = std::min({p0.x, p1.x, p2.x});
    const double max_x = std::max({p0.x, p1.x, p2.x});
    const double min_y = std::min({p0.y, p1.y, p2.y});
    const double max_y = std::max({p0.y, p1.y, p2.y});
    const int i0 = std::max(0, static_cast<int>(std::ceil(min_x - 0.5)));
    const int i1 = std::min(width - 1, static_cast<int>(std::floor(max_x - 0.5)));
    const int j0 = std::max(0, static_cast<int>(std::ceil(min_y - 0.5)));
    const int j1 = std::min(height - 1, static_cast<int>(std::floor(max_y - 0.5)));

    for (int j = j0; j <= j1; ++j) {
      const double py = j + 0.5;
      for (int i = i0; i <= i1; ++i) {
        const double px = i + 0.5;
        const double b0 = sign * edge(p1.x, p1.y, p2.x, p2.y, px, py);
        const double b1 = sign * edge(p2.x, p2.y, p0.x, p0.y, px, py);
        const double b2 = sign * edge(p0.x, p0.y, p1.x, p1.y, px, py);
        if (b0 < 0.0 || b1 < 0.0 || b2 < 0.0) continue;
        const double l0 = b0 * inv_area;
        const double l1 = b1 * inv_area;
        const double l2 = b2 * inv_area;
        const double z = 1.0 / (l0 / p0.depth + l1 / p1.depth + l2 / p2.depth);
        const std::size_t pixel = static_cast<std::size_t>(j) * width + i;
        if (!(z < depth[pixel])) continue;
        depth[pixel] = z;
        for (int c = 0; c < 3; ++c) {
          const double albedo = l0 * vertices(tri[0], 3 + c) + l1 * vertices(tri[1], 3 + c) +
                                l2 * vertices(tri[2], 3 + c);
          image.at(i, j, c) = std::clamp(albedo * shade[c], 0.0, 1.0);
        }
      }
    }
  }
  return image;
}

double dense_regression_loss(const Image& rendered, const Image& crop) {
  if (rendered.width() != crop.width() || rendered.height() != crop.height()) {
    throw InvalidArgument("rendered image is " + std::to_string(rendered.width()) + "x" +
                          std::to_string(rendered.height()) + ", crop is " + std::to_string(crop.width()) +
                          "x" + std::to_string(crop.height()));
  }
  if (rendered.pixel_count() == 0) throw InvalidArgument("images are empty");
  const auto& a = rendered.data();
  const auto& b = crop.data();
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += std::abs(a[k] - b[k]);
  return sum / static_cast<double>(rendered.pixel_count());
}

std::vector<double> finite_diff_grad(const std::function<double(std::span<const double>)>& loss,
                                     std::span<const double> params, double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("finite-difference step must be positive");
  std::vector<double> p(params.begin(), params.end());
  std::vector<double> grad(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double saved = p[i];
    p[i] = saved + eps;
    const double up = loss(p);
    p[i] = saved - eps;
    const double down = loss(p);
    p[i] = saved;
    grad[i] = (up - down) / (2.0 * eps);
  }
  return grad;
}

}  // namespace faceloc
