#pragma once

#include <Eigen/Core>

#include "zsc/mesh_core/laplacian.hpp"
#include "zsc/mesh_core/mesh.hpp"

namespace zsc {

struct SpectralBasis {
  Eigen::VectorXd eigenvalues;     // ascending, k entries
  Eigen::MatrixXd eigenfunctions;  // |V| x k, mass-orthonormal columns
  Eigen::VectorXd masses;          // lumped vertex areas

  Eigen::Index size() const { return eigenvalues.size(); }
  Eigen::Index num_vertices() const { return eigenfunctions.rows(); }

  /// Mass-weighted projection Phi^T A F of vertex functions (columns of F).
  Eigen::MatrixXd project(const Eigen::MatrixXd& functions) const;
};

enum class EigenMethod { Auto, Krylov, Dense };

struct SpectralOptions {
  EigenMethod method = EigenMethod::Auto;
  double tolerance = 1e-10;  // relative Ritz residual in the shift-inverted operator
  int blockSize = 12;
};

inline constexpr int kDefaultBasisSize = 60;

/// First k generalized eigenpairs of (stiffness, masses). Eigenfunction
/// signs are fixed so the first entry with magnitude above 1e-10 of the
/// column maximum is positive. Throws Error{Numerical} with the residual on
/// non-convergence.
SpectralBasis spectral_basis(const Mesh& mesh, int k, const SpectralOptions& options = {});
SpectralBasis spectral_basis(const Laplacian& laplacian, int k,
                             const SpectralOptions& options = {}, bool connected = true);

/// max |Phi^T A Phi - I|
double mass_orthonormality_residual(const SpectralBasis& basis);

/// max over columns of |K phi - lambda A phi|_inf
double eigen_residual(const Laplacian& laplacian, const SpectralBasis& basis);

}  // namespace zsc
