#pragma once

#include <vector>

#include "zsc/mesh_core/mesh.hpp"

namespace zsc {

inline constexpr double kDefaultFovDeg = 50.0;
inline constexpr int kDefaultImageSize = 512;

struct Camera {
  double elevationDeg = 0.0;
  double azimuthDeg = 0.0;
  double radius = 2.0;
  double fovDeg = kDefaultFovDeg;
  int imageSize = kDefaultImageSize;

  Vec3 position() const;
  /// Throws Error{Input} unless radius > 0, imageSize >= 16 and
  /// elevation lies in (-90, 90).
  void validate() const;
};

/// r * (cos e sin a, sin e, cos e cos a); the camera looks at the origin
/// with +Y up.
Vec3 camera_position(double elevationDeg, double azimuthDeg, double radius);

/// Elevations {-45, 0, 45} x azimuths {0, 90, 180, 270} at radius 2,
/// elevation-major. k = 12 gives the grid; k = 24 or 36 repeats it at radii
/// 1.75 and 1.5; k < 12 takes evenly spaced grid entries.
std::vector<Camera> classification_viewpoints(int k = 12, int imageSize = kDefaultImageSize);

/// Deterministic Fibonacci-sphere unit directions.
std::vector<Vec3> fibonacci_directions(int count);

/// totalViews / |radii| Fibonacci directions, each emitted at every radius
/// in descending order. Throws Error{Input} if totalViews is not divisible.
std::vector<Camera> segmentation_viewpoints(int totalViews = 180,
                                            const std::vector<double>& radii = {2.0, 1.75, 1.5},
                                            int imageSize = kDefaultImageSize);

}  // namespace zsc
