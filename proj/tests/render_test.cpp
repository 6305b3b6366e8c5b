#include <gtest/gtest.h>

#include <Eigen/Geometry>

#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>
#include <random>
#include <set>

#include "support/raycast.hpp"
#include "support/temp_dir.hpp"
#include "zsc/common/error.hpp"
#include "zsc/mesh_core/shapes.hpp"
#include "zsc/view_render/camera.hpp"
#include "zsc/view_render/image.hpp"
#include "zsc/view_render/raster.hpp"

namespace zsc {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

Camera small_camera(double e, double a, double r = 2.0, int size = 96) {
  Camera c;
  c.elevationDeg = e;
  c.azimuthDeg = a;
  c.radius = r;
  c.imageSize = size;
  return c;
}

Mesh facing_triangle(double z = 0.0, double s = 0.5) {
  Mesh m;
  m.vertices = {Vec3(-s, -s, z), Vec3(s, -s, z), Vec3(0, s, z)};
  m.faces = {{0, 1, 2}};
  return m;
}

TEST(Camera, PositionConvention) {
  EXPECT_LT((camera_position(0, 0, 2) - Vec3(0, 0, 2)).norm(), 1e-12);
  EXPECT_LT((camera_position(0, 90, 2) - Vec3(2, 0, 0)).norm(), 1e-12);
  EXPECT_LT((camera_position(45, 0, 2) - Vec3(0, std::sqrt(2.0), std::sqrt(2.0))).norm(), 1e-12);
}

TEST(Camera, FrameLooksAtOrigin) {
  for (double e : {-60.0, 0.0, 30.0})
    for (double a : {0.0, 45.0, 200.0}) {
      const CameraFrame f = camera_frame(small_camera(e, a));
      EXPECT_LT((f.axes * f.axes.transpose() - Eigen::Matrix3d::Identity()).norm(), 1e-12);
      EXPECT_LT((f.axes.row(2).transpose() + f.eye.normalized()).norm(), 1e-12);
      EXPECT_GE(f.axes(1, 1), 0.0);  // camera up leans towards +Y
    }
}

TEST(Camera, Validation) {
  EXPECT_THROW(small_camera(90, 0).validate(), Error);
  EXPECT_THROW(small_camera(0, 0, 0).validate(), Error);
  EXPECT_THROW(small_camera(0, 0, 2, 8).validate(), Error);
  EXPECT_NO_THROW(small_camera(89, 0).validate());
}

TEST(Viewpoints, ClassificationGrid) {
  const auto cams = classification_viewpoints();
  ASSERT_EQ(cams.size(), 12u);
  EXPECT_EQ(cams[0].elevationDeg, -45);
  EXPECT_EQ(cams[0].azimuthDeg, 0);
  EXPECT_EQ(cams[1].azimuthDeg, 90);
  EXPECT_EQ(cams[4].elevationDeg, 0);
  for (const auto& c : cams) {
    EXPECT_EQ(c.radius, 2.0);
    EXPECT_EQ(c.imageSize, 512);
  }
}

TEST(Viewpoints, ClassificationOtherCounts) {
  const auto k24 = classification_viewpoints(24);
  ASSERT_EQ(k24.size(), 24u);
  EXPECT_EQ(k24[11].radius, 2.0);
  EXPECT_EQ(k24[12].radius, 1.75);
  EXPECT_EQ(k24[12].elevationDeg, -45);
  const auto k6 = classification_viewpoints(6);
  ASSERT_EQ(k6.size(), 6u);
  EXPECT_EQ(k6[1].elevationDeg, -45);
  EXPECT_EQ(k6[1].azimuthDeg, 180);
  EXPECT_THROW(classification_viewpoints(0), Error);
  EXPECT_THROW(classification_viewpoints(13), Error);
}

TEST(Viewpoints, SegmentationLattice) {
  const auto cams = segmentation_viewpoints(180);
  ASSERT_EQ(cams.size(), 180u);
  for (std::size_t i = 0; i < cams.size(); i += 3) {
    EXPECT_EQ(cams[i].radius, 2.0);
    EXPECT_EQ(cams[i + 1].radius, 1.75);
    EXPECT_EQ(cams[i + 2].radius, 1.5);
    EXPECT_LT((cams[i].position().normalized() - cams[i + 2].position().normalized()).norm(), 1e-12);
  }
  EXPECT_EQ(segmentation_viewpoints(30).size(), 30u);
  EXPECT_THROW(segmentation_viewpoints(31), Error);
}

TEST(Viewpoints, FibonacciSpacing) {
  const auto dirs = fibonacci_directions(60);
  double minAngle = 180.0;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    EXPECT_NEAR(dirs[i].norm(), 1.0, 1e-12);
    for (std::size_t j = i + 1; j < dirs.size(); ++j)
      minAngle = std::min(minAngle, std::acos(std::clamp(dirs[i].dot(dirs[j]), -1.0, 1.0)) / kDeg);
  }
  EXPECT_GT(minAngle, 10.0);
  const auto cams = segmentation_viewpoints(180);
  for (std::size_t d = 0; d < dirs.size(); ++d)
    EXPECT_LT((cams[3 * d].position() / 2.0 - dirs[d]).norm(), 1e-9);
}

TEST(Render, SingleTriangle) {
  const RenderedView v = render(facing_triangle(), small_camera(0, 0));
  int covered = 0;
  for (int y = 0; y < v.faceIndex.height; ++y)
    for (int x = 0; x < v.faceIndex.width; ++x) {
      const auto id = v.faceIndex.at(x, y);
      ASSERT_TRUE(id == 0 || id == kBackground);
      const std::uint8_t* rgb = v.rgb.at(x, y);
      const bool black = rgb[0] == 0 && rgb[1] == 0 && rgb[2] == 0;
      EXPECT_EQ(black, id == kBackground);
      covered += id == 0;
    }
  // Projected area: triangle of half-size 0.5 at depth 2, fov 50.
  const double focal = 1.0 / std::tan(25 * kDeg);
  const double side = 0.5 / 2.0 * focal * 48;
  const double expected = 2 * side * 2 * side / 2;
  EXPECT_NEAR(covered, expected, 0.05 * expected);
}

TEST(Render, NearerTriangleWins) {
  Mesh m = facing_triangle(-0.3, 0.6);
  const Mesh front = facing_triangle(0.3, 0.4);
  m.vertices.insert(m.vertices.end(), front.vertices.begin(), front.vertices.end());
  m.faces.push_back({3, 4, 5});
  const RenderedView v = render(m, small_camera(0, 0));
  const FaceIndexImage onlyFront = render(front, small_camera(0, 0)).faceIndex;
  int overlap = 0;
  for (int y = 0; y < v.faceIndex.height; ++y)
    for (int x = 0; x < v.faceIndex.width; ++x)
      if (onlyFront.at(x, y) == 0) {
        EXPECT_EQ(v.faceIndex.at(x, y), 1);
        ++overlap;
      }
  EXPECT_GT(overlap, 100);
  // Same scene with face order reversed: the occluder still wins.
  std::swap(m.faces[0], m.faces[1]);
  const RenderedView w = render(m, small_camera(0, 0));
  for (int y = 0; y < w.faceIndex.height; ++y)
    for (int x = 0; x < w.faceIndex.width; ++x)
      if (onlyFront.at(x, y) == 0) {
        EXPECT_EQ(w.faceIndex.at(x, y), 0);
      }
}

TEST(Render, SharedEdgesDrawnOnce) {
  // A closed mesh seen from outside has no background holes inside its silhouette.
  const Mesh m = shapes::icosphere(2);
  const RenderedView v = render(m, small_camera(10, 20, 2.0, 128));
  const FaceIndexImage ref = testing::raycast_face_ids(m, v.camera);
  int holes = 0;
  for (int y = 1; y + 1 < 128; ++y)
    for (int x = 1; x + 1 < 128; ++x)
      if (v.faceIndex.at(x, y) == kBackground && testing::interior_pixel(ref, x, y) &&
          ref.at(x, y) != kBackground)
        ++holes;
  EXPECT_EQ(holes, 0);
}

TEST(Render, AgreesWithRaycastOracle) {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> elev(-80, 80), azim(0, 360), rad(1.5, 2.5);
  const std::vector<Mesh> meshes = {normalize_unit_sphere(shapes::blob(2, 1)),
                                    normalize_unit_sphere(shapes::cube()),
                                    normalize_unit_sphere(shapes::icosphere(2))};
  for (const Mesh& m : meshes)
    for (int trial = 0; trial < 3; ++trial) {
      const Camera cam = small_camera(elev(rng), azim(rng), rad(rng), 96);
      const FaceIndexImage got = render(m, cam).faceIndex;
      const FaceIndexImage ref = testing::raycast_face_ids(m, cam);
      int total = 0, agree = 0;
      for (int y = 0; y < 96; ++y)
        for (int x = 0; x < 96; ++x)
          if (testing::interior_pixel(ref, x, y)) {
            ++total;
            agree += got.at(x, y) == ref.at(x, y);
          }
      EXPECT_GE(agree, 0.995 * total) << m.id;
    }
}

TEST(Render, FaceIdShadingDecodes) {
  const Mesh m = normalize_unit_sphere(shapes::blob(2, 5));
  const Camera cam = small_camera(20, 70);
  RenderOptions opts;
  opts.shading = Shading::FaceId;
  const RenderedView v = render(m, cam, opts);
  for (int y = 0; y < 96; ++y)
    for (int x = 0; x < 96; ++x) ASSERT_EQ(decode_face_id(v.rgb.at(x, y)), v.faceIndex.at(x, y));
  for (std::int32_t f : {0, 1, 255, 256, 65535, 100000, 0xFFFFFE - 1}) {
    const Rgb8 c = encode_face_id(f);
    EXPECT_EQ(decode_face_id(c.data()), f);
  }
}

TEST(Render, LitFacesNeverBlack) {
  Mesh m = facing_triangle();
  // Face seen exactly edge-on from the headlight still gets the ambient floor.
  m.vertices = {Vec3(-0.5, -0.5, 0), Vec3(0.5, -0.5, 0), Vec3(0, 0.5, 0.3)};
  RenderOptions opts;
  opts.faceColors = {Rgb8{0, 0, 3}};
  const RenderedView v = render(m, small_camera(0, 0), opts);
  for (int y = 0; y < 96; ++y)
    for (int x = 0; x < 96; ++x) {
      const std::uint8_t* p = v.rgb.at(x, y);
      EXPECT_EQ(p[0] == 0 && p[1] == 0 && p[2] == 0, v.faceIndex.at(x, y) == kBackground);
    }
}

TEST(Render, Deterministic) {
  const Mesh m = normalize_unit_sphere(shapes::blob(3, 2));
  const Camera cam = small_camera(-30, 10, 1.75, 128);
  const RenderedView a = render(m, cam), b = render(m, cam);
  EXPECT_EQ(a.rgb, b.rgb);
  EXPECT_EQ(a.faceIndex, b.faceIndex);
}

TEST(Render, JointRotationAboutUpAxis) {
  const Mesh m = normalize_unit_sphere(shapes::blob(3, 3));
  for (double theta : {33.0, 90.0, 217.0}) {
    const Eigen::Matrix3d r = Eigen::AngleAxisd(theta * kDeg, Vec3::UnitY()).toRotationMatrix();
    const FaceIndexImage a = render(m, small_camera(15, 40, 2.0, 128)).faceIndex;
    const FaceIndexImage b = render(transformed(m, r), small_camera(15, 40 + theta, 2.0, 128)).faceIndex;
    std::size_t same = 0;
    for (std::size_t i = 0; i < a.ids.size(); ++i) same += a.ids[i] == b.ids[i];
    EXPECT_GE(same, 0.99 * a.ids.size());
  }
}

TEST(Render, CameraInsideStillRenders) {
  const Mesh m = normalize_unit_sphere(shapes::icosphere(2));
  const RenderedView v = render(m, small_camera(0, 0, 0.5));
  std::set<std::int32_t> ids(v.faceIndex.ids.begin(), v.faceIndex.ids.end());
  EXPECT_GT(ids.size(), 1u);
}

TEST(ImageIo, PngRoundTrips) {
  const RenderedView v = render(normalize_unit_sphere(shapes::cube()), small_camera(30, 30));
  EXPECT_EQ(decode_png_rgb(encode_png(v.rgb)), v.rgb);
  GrayImage g(7, 5);
  g.at(3, 2) = 1;
  g.at(6, 4) = 255;
  EXPECT_EQ(decode_png_gray(encode_png(g)), g);
  testing::TempDir dir;
  save_png(dir / "v.png", v.rgb);
  EXPECT_EQ(load_png(dir / "v.png"), v.rgb);
  save_face_index_raw(dir / "v.raw", v.faceIndex);
  EXPECT_EQ(std::filesystem::file_size(dir / "v.raw"), 96u * 96u * 4u);
  EXPECT_EQ(load_face_index_raw(dir / "v.raw", 96, 96), v.faceIndex);
  EXPECT_THROW(load_face_index_raw(dir / "v.raw", 95, 96), Error);
}

TEST(ImageIo, RawIsLittleEndian) {
  testing::TempDir dir;
  FaceIndexImage img(2, 1);
  img.at(0, 0) = 0x01020304;
  img.at(1, 0) = kBackground;
  save_face_index_raw(dir / "r.raw", img);
  std::ifstream in(dir / "r.raw", std::ios::binary);
  std::vector<unsigned char> bytes{std::istreambuf_iterator<char>(in), {}};
  ASSERT_EQ(bytes.size(), 8u);
  EXPECT_EQ(bytes[0], 0x04);
  EXPECT_EQ(bytes[3], 0x01);
  EXPECT_EQ(bytes[4], 0xFF);
}

TEST(ImageIo, CorruptPngIsProtocolError) {
  const std::vector<std::uint8_t> junk = {1, 2, 3, 4, 5};
  try {
    decode_png_rgb(junk);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Protocol);
  }
}

}  // namespace
}  // namespace zsc
