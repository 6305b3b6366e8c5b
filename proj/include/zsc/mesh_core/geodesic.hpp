#pragma once

#include <vector>

#include "zsc/mesh_core/mesh.hpp"

namespace zsc {

/// Shortest paths on the edge graph weighted by Euclidean edge length.
/// Unreachable vertices get +infinity.
class EdgeGeodesics {
 public:
  explicit EdgeGeodesics(const Mesh& mesh);

  std::vector<double> from(int source) const;
  std::size_t num_vertices() const { return adjacency_.size(); }

 private:
  struct Arc {
    int to;
    double length;
  };
  std::vector<std::vector<Arc>> adjacency_;
};

std::vector<double> geodesic_distances(const Mesh& mesh, int source);

/// Greedy farthest-point sampling on edge geodesics starting at `seed`;
/// ties go to the lowest vertex index.
std::vector<int> farthest_points(const Mesh& mesh, int count, int seed = 0);

}  // namespace zsc
