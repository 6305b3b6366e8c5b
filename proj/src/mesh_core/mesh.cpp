#include "zsc/mesh_core/mesh.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "zsc/common/error.hpp"

namespace zsc {

void Mesh::validate() const {
  const int n = static_cast<int>(vertices.size());
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const Face& face = faces[f];
    for (int idx : face) {
      if (idx < 0 || idx >= n)
        fail(ErrorKind::Input, "face " + std::to_string(f) + " references vertex " +
                                   std::to_string(idx) + " out of range [0," +
                                   std::to_string(n) + ")");
    }
    if (face[0] == face[1] || face[1] == face[2] || face[0] == face[2])
      fail(ErrorKind::Input, "face " + std::to_string(f) + " repeats a vertex index");
  }
}

Mesh normalize_unit_sphere(const Mesh& mesh) {
  if (mesh.vertices.empty()) fail(ErrorKind::Input, "cannot normalize an empty mesh");
  Vec3 centroid = Vec3::Zero();
  for (const Vec3& v : mesh.vertices) centroid += v;
  centroid /= static_cast<double>(mesh.vertices.size());

  double maxNorm = 0.0;
  for (const Vec3& v : mesh.vertices) maxNorm = std::max(maxNorm, (v - centroid).norm());
  const double extent = std::max(1.0, centroid.norm());
  if (!(maxNorm > 1e-12 * extent))
    fail(ErrorKind::Input, "mesh has zero extent (all vertices coincide)");

  Mesh out = mesh;
  for (Vec3& v : out.vertices) v = (v - centroid) / maxNorm;
  return out;
}

double face_area(const Mesh& mesh, std::size_t face) {
  const Face& f = mesh.faces[face];
  const Vec3& a = mesh.vertices[f[0]];
  const Vec3& b = mesh.vertices[f[1]];
  const Vec3& c = mesh.vertices[f[2]];
  return 0.5 * (b - a).cross(c - a).norm();
}

std::vector<double> face_areas(const Mesh& mesh) {
  std::vector<double> areas(mesh.faces.size());
  for (std::size_t f = 0; f < areas.size(); ++f) areas[f] = face_area(mesh, f);
  return areas;
}

double total_area(const Mesh& mesh) {
  double sum = 0.0;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) sum += face_area(mesh, f);
  return sum;
}

Vec3 face_normal(const Mesh& mesh, std::size_t face) {
  const Face& f = mesh.faces[face];
  const Vec3& a = mesh.vertices[f[0]];
  const Vec3 n = (mesh.vertices[f[1]] - a).cross(mesh.vertices[f[2]] - a);
  const double len = n.norm();
  return len > 0.0 ? Vec3(n / len) : Vec3::Zero();
}

std::vector<std::vector<int>> vertex_faces(const Mesh& mesh) {
  std::vector<std::vector<int>> out(mesh.vertices.size());
  for (std::size_t f = 0; f < mesh.faces.size(); ++f)
    for (int v : mesh.faces[f]) out[v].push_back(static_cast<int>(f));
  return out;
}

std::vector<std::vector<int>> face_adjacency(const Mesh& mesh) {
  std::map<std::pair<int, int>, std::vector<int>> edgeFaces;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const Face& face = mesh.faces[f];
    for (int e = 0; e < 3; ++e) {
      int a = face[e], b = face[(e + 1) % 3];
      if (a > b) std::swap(a, b);
      edgeFaces[{a, b}].push_back(static_cast<int>(f));
    }
  }
  std::vector<std::vector<int>> adj(mesh.faces.size());
  for (const auto& [edge, fs] : edgeFaces)
    for (int f : fs)
      for (int g : fs)
        if (f != g) adj[f].push_back(g);
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return adj;
}

std::vector<std::array<int, 2>> unique_edges(const Mesh& mesh) {
  std::vector<std::array<int, 2>> edges;
  edges.reserve(mesh.faces.size() * 3);
  for (const Face& face : mesh.faces)
    for (int e = 0; e < 3; ++e) {
      int a = face[e], b = face[(e + 1) % 3];
      if (a > b) std::swap(a, b);
      edges.push_back({a, b});
    }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

double mean_edge_length(const Mesh& mesh) {
  const auto edges = unique_edges(mesh);
  if (edges.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& e : edges) sum += (mesh.vertices[e[0]] - mesh.vertices[e[1]]).norm();
  return sum / static_cast<double>(edges.size());
}

std::vector<int> vertex_components(const Mesh& mesh, int* count) {
  const int n = static_cast<int>(mesh.vertices.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Face& f : mesh.faces)
    for (int e = 0; e < 3; ++e) {
      int a = find(f[e]), b = find(f[(e + 1) % 3]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<int> label(n, -1), rootLabel(n, -1);
  int next = 0;
  for (int v = 0; v < n; ++v) {
    const int r = find(v);
    if (rootLabel[r] < 0) rootLabel[r] = next++;
    label[v] = rootLabel[r];
  }
  if (count) *count = next;
  return label;
}

Mesh remove_unreferenced_vertices(const Mesh& mesh) {
  std::vector<int> remap(mesh.vertices.size(), -1);
  for (const Face& f : mesh.faces)
    for (int v : f) remap[v] = 0;
  Mesh out;
  out.id = mesh.id;
  for (std::size_t v = 0; v < remap.size(); ++v) {
    if (remap[v] < 0) continue;
    remap[v] = static_cast<int>(out.vertices.size());
    out.vertices.push_back(mesh.vertices[v]);
  }
  out.faces.reserve(mesh.faces.size());
  for (const Face& f : mesh.faces) out.faces.push_back({remap[f[0]], remap[f[1]], remap[f[2]]});
  return out;
}

Mesh transformed(const Mesh& mesh, const Eigen::Matrix3d& rotation, double scale,
                 const Vec3& translation) {
  Mesh out = mesh;
  for (Vec3& v : out.vertices) v = scale * (rotation * v) + translation;
  return out;
}

}  // namespace zsc
