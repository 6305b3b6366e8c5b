#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "zsc/mesh_core/mesh.hpp"

namespace zsc {

struct Laplacian {
  /// Positive semi-definite cotangent stiffness; off-diagonals are
  /// -(cot a + cot b)/2, rows sum to zero.
  Eigen::SparseMatrix<double> stiffness;
  /// Lumped (barycentric) vertex areas.
  Eigen::VectorXd masses;
};

inline constexpr double kCotangentClamp = 1e4;

/// Throws Error{Input} when the mesh has no faces, no positive-area face,
/// or a vertex that no face references.
Laplacian cotangent_laplacian(const Mesh& mesh);

}  // namespace zsc
