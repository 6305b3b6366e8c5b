#pragma once

#include <Eigen/Core>

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace zsc {

using Vec3 = Eigen::Vector3d;
using Face = std::array<int, 3>;

/// Indexed triangle mesh. Vertex and face order are significant: labels,
/// keypoints and point maps all refer to positions in these arrays.
struct Mesh {
  std::string id;
  std::vector<Vec3> vertices;
  std::vector<Face> faces;

  std::size_t num_vertices() const { return vertices.size(); }
  std::size_t num_faces() const { return faces.size(); }

  /// Throws Error{Input} if a face index is out of range or a face repeats
  /// a vertex.
  void validate() const;
};

struct LoadReport {
  std::size_t polygonsSplit = 0;      // faces with more than 3 corners
  std::size_t degenerateDropped = 0;  // zero-area or repeated-index faces
};

/// Reads OBJ or PLY (ascii, binary little/big endian). Polygons are fan
/// triangulated; faces with area below 1e-12 of the total are dropped.
Mesh load_mesh(const std::filesystem::path& path, LoadReport* report = nullptr);

/// Per-vertex RGB in [0,1], one entry per vertex.
using VertexColors = std::vector<Eigen::Vector3d>;

/// OBJ with `v x y z r g b` records. Output is byte-stable for equal input.
void save_colored_obj(const std::filesystem::path& path, const Mesh& mesh,
                      const VertexColors& colors);
void save_obj(const std::filesystem::path& path, const Mesh& mesh);

/// Centers the vertex centroid at the origin and scales so the farthest
/// vertex has norm 1.
Mesh normalize_unit_sphere(const Mesh& mesh);

double face_area(const Mesh& mesh, std::size_t face);
std::vector<double> face_areas(const Mesh& mesh);
double total_area(const Mesh& mesh);
Vec3 face_normal(const Mesh& mesh, std::size_t face);  // unit length, zero if degenerate

/// vertex -> incident faces, in ascending face order.
std::vector<std::vector<int>> vertex_faces(const Mesh& mesh);

/// face -> faces sharing an edge, ascending.
std::vector<std::vector<int>> face_adjacency(const Mesh& mesh);

/// Unique undirected edges (i < j), sorted.
std::vector<std::array<int, 2>> unique_edges(const Mesh& mesh);

double mean_edge_length(const Mesh& mesh);

/// Connected components of the vertex graph; returns component id per
/// vertex (ids ordered by smallest member vertex) and sets `count`.
std::vector<int> vertex_components(const Mesh& mesh, int* count = nullptr);

/// Drops vertices no face references, remapping faces.
Mesh remove_unreferenced_vertices(const Mesh& mesh);

/// Applies a rigid/similarity transform p -> scale * R p + t.
Mesh transformed(const Mesh& mesh, const Eigen::Matrix3d& rotation, double scale = 1.0,
                 const Vec3& translation = Vec3::Zero());

}  // namespace zsc
