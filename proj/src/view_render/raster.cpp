#include "zsc/view_render/raster.hpp"

#include <spdlog/spdlog.h>

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace zsc {
namespace {

constexpr double kNear = 1e-3;

struct ScreenVertex {
  double x, y, invDepth;
};

double edge(const ScreenVertex& a, const ScreenVertex& b, double px, double py) {
  return (b.x - a.x) * (py - a.y) - (b.y - a.y) * (px - a.x);
}

// Exactly one of the two directed traversals of an edge owns pixels lying
// on it, so shared edges are never drawn twice.
bool owns_boundary(const ScreenVertex& a, const ScreenVertex& b) {
  const double dy = b.y - a.y, dx = b.x - a.x;
  return dy < 0.0 || (dy == 0.0 && dx > 0.0);
}

int clip_near(const Vec3 (&in)[3], Vec3 (&out)[4]) {
  int n = 0;
  for (int i = 0; i < 3; ++i) {
    const Vec3& a = in[i];
    const Vec3& b = in[(i + 1) % 3];
    const bool aIn = a.z() >= kNear, bIn = b.z() >= kNear;
    if (aIn) out[n++] = a;
    if (aIn != bIn) {
      const double t = (kNear - a.z()) / (b.z() - a.z());
      out[n++] = a + t * (b - a);
    }
  }
  return n;
}

}  // namespace

Rgb8 encode_face_id(std::int32_t face) {
  const auto v = static_cast<std::uint32_t>(face + 1);
  return {static_cast<std::uint8_t>((v >> 16) & 0xFF), static_cast<std::uint8_t>((v >> 8) & 0xFF),
          static_cast<std::uint8_t>(v & 0xFF)};
}

std::int32_t decode_face_id(const std::uint8_t* rgb) {
  const std::uint32_t v = (static_cast<std::uint32_t>(rgb[0]) << 16) |
                          (static_cast<std::uint32_t>(rgb[1]) << 8) | rgb[2];
  return static_cast<std::int32_t>(v) - 1;
}

CameraFrame camera_frame(const Camera& camera) {
  CameraFrame frame;
  frame.eye = camera.position();
  const Vec3 forward = (-frame.eye).normalized();
  Vec3 up = Vec3::UnitY();
  if (forward.cross(up).norm() < 1e-9) up = Vec3::UnitZ();
  const Vec3 right = forward.cross(up).normalized();
  const Vec3 camUp = right.cross(forward);
  frame.axes.row(0) = right.transpose();
  frame.axes.row(1) = camUp.transpose();
  frame.axes.row(2) = forward.transpose();
  frame.focal = 1.0 / std::tan(0.5 * camera.fovDeg * std::numbers::pi / 180.0);
  return frame;
}

RenderedView render(const Mesh& mesh, const Camera& camera, const RenderOptions& options) {
  camera.validate();
  const int size = camera.imageSize;
  RenderedView view{RgbImage(size, size), FaceIndexImage(size, size), camera};
  std::vector<double> depth(static_cast<std::size_t>(size) * size, 0.0);  // 1/d, 0 = far

  const CameraFrame frame = camera_frame(camera);
  double maxNorm = 0.0;
  for (const Vec3& v : mesh.vertices) maxNorm = std::max(maxNorm, v.norm());
  if (camera.radius <= maxNorm)
    spdlog::warn("camera at radius {} lies inside the mesh bounding sphere (radius {})",
                 camera.radius, maxNorm);

  const double half = 0.5 * size;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const Face& face = mesh.faces[f];
    Vec3 cam[3];
    for (int c = 0; c < 3; ++c) cam[c] = frame.axes * (mesh.vertices[face[c]] - frame.eye);
    Vec3 clipped[4];
    const int count = clip_near(cam, clipped);
    if (count < 3) continue;

    Rgb8 color;
    if (options.shading == Shading::FaceId) {
      color = encode_face_id(static_cast<std::int32_t>(f));
    } else {
      const Vec3 centroid =
          (mesh.vertices[face[0]] + mesh.vertices[face[1]] + mesh.vertices[face[2]]) / 3.0;
      const Vec3 toEye = (frame.eye - centroid).normalized();
      const double lambert = std::abs(face_normal(mesh, f).dot(toEye));
      const double intensity = options.ambient + (1.0 - options.ambient) * lambert;
      const Rgb8 base = f < options.faceColors.size() ? options.faceColors[f] : Rgb8{204, 204, 204};
      for (int ch = 0; ch < 3; ++ch)
        color[ch] = static_cast<std::uint8_t>(
            std::clamp<long>(std::lround(base[ch] * intensity), 1, 255));
    }

    ScreenVertex sv[4];
    for (int c = 0; c < count; ++c) {
      const double d = clipped[c].z();
      sv[c] = {(frame.focal * clipped[c].x() / d + 1.0) * half,
               (1.0 - frame.focal * clipped[c].y() / d) * half, 1.0 / d};
    }
    for (int t = 1; t + 1 < count; ++t) {
      ScreenVertex v0 = sv[0], v1 = sv[t], v2 = sv[t + 1];
      double area = edge(v0, v1, v2.x, v2.y);
      if (std::abs(area) < 1e-14) continue;
      if (area < 0.0) {
        std::swap(v1, v2);
        area = -area;
      }
      const double minX = std::min({v0.x, v1.x, v2.x}), maxX = std::max({v0.x, v1.x, v2.x});
      const double minY = std::min({v0.y, v1.y, v2.y}), maxY = std::max({v0.y, v1.y, v2.y});
      const int x0 = std::max(0, static_cast<int>(std::ceil(minX - 0.5)));
      const int x1 = std::min(size - 1, static_cast<int>(std::floor(maxX - 0.5)));
      const int y0 = std::max(0, static_cast<int>(std::ceil(minY - 0.5)));
      const int y1 = std::min(size - 1, static_cast<int>(std::floor(maxY - 0.5)));
      const bool own0 = owns_boundary(v1, v2), own1 = owns_boundary(v2, v0),
                 own2 = owns_boundary(v0, v1);
      for (int py = y0; py <= y1; ++py) {
        const double cy = py + 0.5;
        for (int px = x0; px <= x1; ++px) {
          const double cx = px + 0.5;
          const double w0 = edge(v1, v2, cx, cy);
          const double w1 = edge(v2, v0, cx, cy);
          const double w2 = edge(v0, v1, cx, cy);
          if (w0 < 0.0 || w1 < 0.0 || w2 < 0.0) continue;
          if ((w0 == 0.0 && !own0) || (w1 == 0.0 && !own1) || (w2 == 0.0 && !own2)) continue;
          const double invDepth = (w0 * v0.invDepth + w1 * v1.invDepth + w2 * v2.invDepth) / area;
          const std::size_t idx = static_cast<std::size_t>(py) * size + px;
          if (invDepth <= depth[idx]) continue;
          depth[idx] = invDepth;
          view.faceIndex.ids[idx] = static_cast<std::int32_t>(f);
          std::copy(color.begin(), color.end(), view.rgb.pixels.begin() + idx * 3);
        }
      }
    }
  }
  return view;
}

}  // namespace zsc
