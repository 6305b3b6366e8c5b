#pragma once

#include <cstdint>
#include <vector>

#include "zsc/mesh_core/mesh.hpp"

namespace zsc::shapes {

/// Unit icosphere; subdivision 0 is the icosahedron (12 vertices).
Mesh icosphere(int subdivisions);

/// Icosphere with a smooth, asymmetric radial displacement
/// r(p) = 1 + sum_i a_i exp(-|p - c_i|^2 / w_i^2). Bump centers, widths and
/// amplitudes are drawn from `seed`.
Mesh blob(int subdivisions, std::uint64_t seed, int bumps = 5, double amplitude = 0.35);

/// Axis-aligned box [-1,1]^3 with 12 triangles.
Mesh cube();

/// Regular grid in the z=0 plane, nx x ny quads split into 2 triangles.
Mesh grid(int nx, int ny, double width = 1.0, double height = 1.0);

/// Face label = index of the direction with the largest dot product against
/// the face centroid (relative to the vertex centroid). Ties go to the lower index.
std::vector<int> direction_labels(const Mesh& mesh, const std::vector<Vec3>& directions);

/// Four regular-tetrahedron directions.
std::vector<Vec3> tetrahedral_directions();

}  // namespace zsc::shapes
