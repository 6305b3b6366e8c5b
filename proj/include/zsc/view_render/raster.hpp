#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "zsc/mesh_core/mesh.hpp"
#include "zsc/view_render/camera.hpp"
#include "zsc/view_render/image.hpp"

namespace zsc {

struct RenderedView {
  RgbImage rgb;
  FaceIndexImage faceIndex;
  Camera camera;
};

enum class Shading {
  Headlight,  // flat diffuse lit from the camera position
  FaceId,     // unlit, rgb encodes face id + 1 (24-bit, R most significant)
};

using Rgb8 = std::array<std::uint8_t, 3>;

struct RenderOptions {
  Shading shading = Shading::Headlight;
  std::vector<Rgb8> faceColors;  // optional per-face base colors for Headlight
  double ambient = 0.2;          // shading floor for lit faces
};

/// Perspective z-buffered rasterization, pixel-center sampling, no back-face
/// culling, black background. faceIndex comes from the same depth test as
/// rgb. Output is a pure function of the inputs.
RenderedView render(const Mesh& mesh, const Camera& camera, const RenderOptions& options = {});

Rgb8 encode_face_id(std::int32_t face);
/// Inverse of encode_face_id; (0,0,0) decodes to kBackground.
std::int32_t decode_face_id(const std::uint8_t* rgb);

/// World-to-camera frame used by the rasterizer: rows of `axes` are camera
/// right, up and forward (towards the origin).
struct CameraFrame {
  Vec3 eye;
  Eigen::Matrix3d axes;
  double focal;  // 1 / tan(fov / 2)
};
CameraFrame camera_frame(const Camera& camera);

}  // namespace zsc
