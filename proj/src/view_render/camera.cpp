#include "zsc/view_render/camera.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zsc/common/error.hpp"

namespace zsc {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

Camera make_camera(double elevation, double azimuth, double radius, int imageSize) {
  Camera c;
  c.elevationDeg = elevation;
  c.azimuthDeg = azimuth;
  c.radius = radius;
  c.imageSize = imageSize;
  c.validate();
  return c;
}

}  // namespace

Vec3 camera_position(double elevationDeg, double azimuthDeg, double radius) {
  const double e = elevationDeg * kDeg, a = azimuthDeg * kDeg;
  return radius * Vec3(std::cos(e) * std::sin(a), std::sin(e), std::cos(e) * std::cos(a));
}

Vec3 Camera::position() const { return camera_position(elevationDeg, azimuthDeg, radius); }

void Camera::validate() const {
  if (!(radius > 0.0)) fail(ErrorKind::Input, "camera radius must be positive");
  if (imageSize < 16) fail(ErrorKind::Input, "camera image size must be at least 16");
  if (!(elevationDeg > -90.0 && elevationDeg < 90.0))
    fail(ErrorKind::Input, "camera elevation must lie in (-90, 90)");
  if (!(fovDeg > 0.0 && fovDeg < 180.0)) fail(ErrorKind::Input, "camera fov must lie in (0, 180)");
}

std::vector<Camera> classification_viewpoints(int k, int imageSize) {
  static constexpr double kElevations[] = {-45.0, 0.0, 45.0};
  static constexpr double kAzimuths[] = {0.0, 90.0, 180.0, 270.0};
  static constexpr double kRadii[] = {2.0, 1.75, 1.5};

  auto grid = [&](double radius) {
    std::vector<Camera> out;
    for (double e : kElevations)
      for (double a : kAzimuths) out.push_back(make_camera(e, a, radius, imageSize));
    return out;
  };
  if (k >= 1 && k < 12) {
    const auto full = grid(kRadii[0]);
    std::vector<Camera> out;
    for (int i = 0; i < k; ++i) out.push_back(full[static_cast<std::size_t>(i * 12 / k)]);
    return out;
  }
  if (k < 1 || k % 12 != 0 || k / 12 > 3)
    fail(ErrorKind::Input, "classification view count must be in [1, 12) or one of 12, 24, 36");
  std::vector<Camera> out;
  for (int r = 0; r < k / 12; ++r) {
    const auto ring = grid(kRadii[r]);
    out.insert(out.end(), ring.begin(), ring.end());
  }
  return out;
}

std::vector<Vec3> fibonacci_directions(int count) {
  std::vector<Vec3> dirs;
  dirs.reserve(static_cast<std::size_t>(std::max(count, 0)));
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double y = 1.0 - (2.0 * i + 1.0) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - y * y));
    const double phi = golden * i;
    dirs.emplace_back(r * std::sin(phi), y, r * std::cos(phi));
  }
  return dirs;
}

std::vector<Camera> segmentation_viewpoints(int totalViews, const std::vector<double>& radii,
                                            int imageSize) {
  if (radii.empty()) fail(ErrorKind::Input, "segmentation views need at least one radius");
  const int perRadius = totalViews / static_cast<int>(radii.size());
  if (totalViews <= 0 || totalViews % static_cast<int>(radii.size()) != 0)
    fail(ErrorKind::Input, "segmentation view count " + std::to_string(totalViews) +
                               " is not divisible by the radius count " +
                               std::to_string(radii.size()));
  std::vector<double> sorted = radii;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  std::vector<Camera> out;
  out.reserve(static_cast<std::size_t>(totalViews));
  for (const Vec3& d : fibonacci_directions(perRadius)) {
    const double elevation = std::asin(std::clamp(d.y(), -1.0, 1.0)) / kDeg;
    double azimuth = std::atan2(d.x(), d.z()) / kDeg;
    if (azimuth < 0.0) azimuth += 360.0;
    for (double r : sorted) out.push_back(make_camera(elevation, azimuth, r, imageSize));
  }
  return out;
}

}  // namespace zsc
