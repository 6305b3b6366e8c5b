#include "zsc/mesh_core/laplacian.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <vector>

#include "zsc/common/error.hpp"

namespace zsc {
namespace {

double clamped_cot(const Vec3& u, const Vec3& v) {
  const double s = u.cross(v).norm();
  const double c = u.dot(v);
  if (s <= 0.0) return c >= 0.0 ? kCotangentClamp : -kCotangentClamp;
  return std::clamp(c / s, -kCotangentClamp, kCotangentClamp);
}

}  // namespace

Laplacian cotangent_laplacian(const Mesh& mesh) {
  if (mesh.faces.empty()) fail(ErrorKind::Input, "Laplacian needs at least one face");
  mesh.validate();
  const auto n = static_cast<Eigen::Index>(mesh.vertices.size());

  Eigen::VectorXd masses = Eigen::VectorXd::Zero(n);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(mesh.faces.size() * 12);
  bool anyArea = false;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const Face& face = mesh.faces[f];
    const double area = face_area(mesh, f);
    if (area > 0.0) anyArea = true;
    for (int c = 0; c < 3; ++c) {
      // corner c sits opposite edge (i, j)
      const int o = face[c], i = face[(c + 1) % 3], j = face[(c + 2) % 3];
      const Vec3& po = mesh.vertices[o];
      const double w = 0.5 * clamped_cot(mesh.vertices[i] - po, mesh.vertices[j] - po);
      triplets.emplace_back(i, j, -w);
      triplets.emplace_back(j, i, -w);
      triplets.emplace_back(i, i, w);
      triplets.emplace_back(j, j, w);
      masses[o] += area / 3.0;
    }
  }
  if (!anyArea) fail(ErrorKind::Input, "Laplacian needs a face with positive area");
  for (Eigen::Index v = 0; v < n; ++v)
    if (!(masses[v] > 0.0))
      fail(ErrorKind::Input, "vertex " + std::to_string(v) +
                                 " has no incident area (unreferenced or degenerate)");

  Laplacian lap;
  lap.stiffness.resize(n, n);
  lap.stiffness.setFromTriplets(triplets.begin(), triplets.end());
  lap.stiffness.makeCompressed();
  lap.masses = std::move(masses);
  return lap;
}

}  // namespace zsc
