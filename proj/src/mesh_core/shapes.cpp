#include "zsc/mesh_core/shapes.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <random>

namespace zsc::shapes {

Mesh icosphere(int subdivisions) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  Mesh mesh;
  mesh.id = "icosphere" + std::to_string(subdivisions);
  const double base[12][3] = {{-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0},
                              {0, -1, t}, {0, 1, t},  {0, -1, -t}, {0, 1, -t},
                              {t, 0, -1}, {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
  for (const auto& p : base) mesh.vertices.push_back(Vec3(p[0], p[1], p[2]).normalized());
  mesh.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int s = 0; s < subdivisions; ++s) {
    std::map<std::pair<int, int>, int> midpoints;
    auto midpoint = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midpoints.find(key);
      if (it != midpoints.end()) return it->second;
      const int idx = static_cast<int>(mesh.vertices.size());
      mesh.vertices.push_back((mesh.vertices[a] + mesh.vertices[b]).normalized());
      midpoints.emplace(key, idx);
      return idx;
    };
    std::vector<Face> next;
    next.reserve(mesh.faces.size() * 4);
    for (const Face& f : mesh.faces) {
      const int ab = midpoint(f[0], f[1]), bc = midpoint(f[1], f[2]), ca = midpoint(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    mesh.faces = std::move(next);
  }
  return mesh;
}

Mesh blob(int subdivisions, std::uint64_t seed, int bumps, double amplitude) {
  Mesh mesh = icosphere(subdivisions);
  mesh.id = "blob" + std::to_string(seed);
  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  struct Bump {
    Vec3 center;
    double width, height;
  };
  std::vector<Bump> list;
  for (int i = 0; i < bumps; ++i) {
    Vec3 c(uniform(-1, 1), uniform(-1, 1), uniform(-1, 1));
    if (c.norm() < 1e-3) c = Vec3::UnitX();
    list.push_back({c.normalized(), uniform(0.35, 0.8), amplitude * uniform(0.4, 1.0)});
  }
  for (Vec3& p : mesh.vertices) {
    double r = 1.0;
    for (const Bump& b : list) r += b.height * std::exp(-(p - b.center).squaredNorm() / (b.width * b.width));
    // mild anisotropic stretch removes the remaining rotational symmetry
    p = Vec3(1.15 * p.x(), 0.95 * p.y(), 0.85 * p.z()) * r;
  }
  return mesh;
}

Mesh cube() {
  Mesh mesh;
  mesh.id = "cube";
  for (int i = 0; i < 8; ++i)
    mesh.vertices.emplace_back((i & 1) ? 1.0 : -1.0, (i & 2) ? 1.0 : -1.0, (i & 4) ? 1.0 : -1.0);
  mesh.faces = {{0, 2, 3}, {0, 3, 1}, {4, 5, 7}, {4, 7, 6}, {0, 1, 5}, {0, 5, 4},
                {2, 6, 7}, {2, 7, 3}, {0, 4, 6}, {0, 6, 2}, {1, 3, 7}, {1, 7, 5}};
  return mesh;
}

Mesh grid(int nx, int ny, double width, double height) {
  Mesh mesh;
  mesh.id = "grid";
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      mesh.vertices.emplace_back(width * i / nx - width / 2, height * j / ny - height / 2, 0.0);
  auto at = [nx](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      mesh.faces.push_back({at(i, j), at(i + 1, j), at(i + 1, j + 1)});
      mesh.faces.push_back({at(i, j), at(i + 1, j + 1), at(i, j + 1)});
    }
  return mesh;
}

std::vector<int> direction_labels(const Mesh& mesh, const std::vector<Vec3>& directions) {
  Vec3 center = Vec3::Zero();
  for (const Vec3& v : mesh.vertices) center += v;
  if (!mesh.vertices.empty()) center /= static_cast<double>(mesh.vertices.size());
  std::vector<int> labels(mesh.faces.size(), 0);
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const Face& face = mesh.faces[f];
    const Vec3 c = (mesh.vertices[face[0]] + mesh.vertices[face[1]] + mesh.vertices[face[2]]) / 3.0 - center;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t d = 0; d < directions.size(); ++d) {
      const double s = c.dot(directions[d]);
      if (s > best) {
        best = s;
        labels[f] = static_cast<int>(d);
      }
    }
  }
  return labels;
}

std::vector<Vec3> tetrahedral_directions() {
  return {Vec3(1, 1, 1).normalized(), Vec3(1, -1, -1).normalized(), Vec3(-1, 1, -1).normalized(),
          Vec3(-1, -1, 1).normalized()};
}

}  // namespace zsc::shapes
