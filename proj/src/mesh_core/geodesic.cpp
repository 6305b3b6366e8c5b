#include "zsc/mesh_core/geodesic.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>

#include "zsc/common/error.hpp"

namespace zsc {

EdgeGeodesics::EdgeGeodesics(const Mesh& mesh) : adjacency_(mesh.vertices.size()) {
  for (const auto& e : unique_edges(mesh)) {
    const double len = (mesh.vertices[e[0]] - mesh.vertices[e[1]]).norm();
    adjacency_[e[0]].push_back({e[1], len});
    adjacency_[e[1]].push_back({e[0], len});
  }
}

std::vector<double> EdgeGeodesics::from(int source) const {
  const int n = static_cast<int>(adjacency_.size());
  if (source < 0 || source >= n)
    fail(ErrorKind::Input, "geodesic source " + std::to_string(source) + " out of range");
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[source] = 0.0;
  queue.emplace(0.0, source);
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (d > dist[v]) continue;
    for (const Arc& a : adjacency_[v]) {
      const double nd = d + a.length;
      if (nd < dist[a.to]) {
        dist[a.to] = nd;
        queue.emplace(nd, a.to);
      }
    }
  }
  return dist;
}

std::vector<double> geodesic_distances(const Mesh& mesh, int source) {
  return EdgeGeodesics(mesh).from(source);
}

std::vector<int> farthest_points(const Mesh& mesh, int count, int seed) {
  const int n = static_cast<int>(mesh.num_vertices());
  if (count < 1 || count > n) fail(ErrorKind::Input, "cannot sample " + std::to_string(count) + " points");
  const EdgeGeodesics geo(mesh);
  std::vector<int> out{seed};
  std::vector<double> nearest = geo.from(seed);
  while (static_cast<int>(out.size()) < count) {
    int next = 0;
    for (int v = 1; v < n; ++v)
      if (nearest[v] > nearest[next]) next = v;
    out.push_back(next);
    const auto d = geo.from(next);
    for (int v = 0; v < n; ++v) nearest[v] = std::min(nearest[v], d[v]);
  }
  return out;
}

}  // namespace zsc
