#include "zsc/mesh_core/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>

#include "zsc/common/error.hpp"

namespace zsc {
namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

struct RawPairs {
  VectorXd values;   // ascending
  MatrixXd vectors;  // standard-form (Euclidean orthonormal) eigenvectors
};

// Eigenpairs of S = D^{-1/2} K D^{-1/2}, dense.
RawPairs dense_pairs(const Laplacian& lap, int k) {
  const VectorXd dis = lap.masses.cwiseSqrt().cwiseInverse();
  MatrixXd s = dis.asDiagonal() * MatrixXd(lap.stiffness) * dis.asDiagonal();
  s = 0.5 * (s + s.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<MatrixXd> solver(s);
  if (solver.info() != Eigen::Success) fail(ErrorKind::Numerical, "dense eigensolver failed");
  return {solver.eigenvalues().head(k), solver.eigenvectors().leftCols(k)};
}

// Deterministic uniform fill in [-0.5, 0.5).
void fill_pseudo_random(Eigen::Ref<MatrixXd> block, std::mt19937_64& rng) {
  for (Index c = 0; c < block.cols(); ++c)
    for (Index r = 0; r < block.rows(); ++r)
      block(r, c) = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
}

// Orthonormalizes columns of `block` against q[:, :used] and each other.
// Columns that collapse are replaced by fresh pseudo-random directions.
void orthonormalize_block(const MatrixXd& q, Index used, Eigen::Ref<MatrixXd> block,
                          std::mt19937_64& rng) {
  for (int pass = 0; pass < 2; ++pass)
    if (used > 0) block -= q.leftCols(used) * (q.leftCols(used).transpose() * block);
  for (Index c = 0; c < block.cols(); ++c) {
    for (int attempt = 0; attempt < 4; ++attempt) {
      const double before = block.col(c).norm();
      for (int pass = 0; pass < 2; ++pass) {
        if (used > 0) block.col(c) -= q.leftCols(used) * (q.leftCols(used).transpose() * block.col(c));
        for (Index p = 0; p < c; ++p) block.col(c) -= block.col(p).dot(block.col(c)) * block.col(p);
      }
      const double after = block.col(c).norm();
      if (after > 1e-10 * std::max(before, 1e-300) && after > 1e-300) {
        block.col(c) /= after;
        break;
      }
      if (attempt == 3) fail(ErrorKind::Numerical, "Krylov basis could not be extended");
      fill_pseudo_random(block.col(c), rng);
    }
  }
}

RawPairs krylov_pairs(const Laplacian& lap, int k, const SpectralOptions& opt) {
  const Index n = lap.masses.size();
  const VectorXd sq = lap.masses.cwiseSqrt();

  double scale = 0.0;
  for (Index i = 0; i < n; ++i) scale += lap.stiffness.coeff(i, i) / lap.masses[i];
  scale /= static_cast<double>(n);
  const double sigma = -1e-4 * scale;

  Eigen::SparseMatrix<double> shifted = lap.stiffness;
  for (Index i = 0; i < n; ++i) shifted.coeffRef(i, i) -= sigma * lap.masses[i];
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(shifted);
  if (ldlt.info() != Eigen::Success)
    fail(ErrorKind::Numerical, "factorization of the shifted Laplacian failed");

  // Op = D^{1/2} (K - sigma A)^{-1} D^{1/2}; its top eigenvalues theta map to
  // the smallest lambda = sigma + 1/theta.
  auto apply = [&](const MatrixXd& y) -> MatrixXd {
    MatrixXd rhs = sq.asDiagonal() * y;
    MatrixXd x = ldlt.solve(rhs);
    return sq.asDiagonal() * x;
  };

  const Index b = std::max(1, opt.blockSize);
  auto round_up = [b](Index v) { return ((v + b - 1) / b) * b; };
  Index dim = std::min(n, round_up(std::max<Index>(2 * k + 2 * b, k + 4 * b)));
  const Index maxDim = std::min(n, round_up(std::max<Index>(8 * k, 600)));
  double worst = 0.0;

  while (true) {
    std::mt19937_64 rng(0x5eedULL);
    MatrixXd q(n, dim), w(n, dim);
    Index used = 0;
    {
      const Index first = std::min(b, dim);
      fill_pseudo_random(q.leftCols(first), rng);
      orthonormalize_block(q, 0, q.leftCols(first), rng);
      used = first;
    }
    Index applied = 0;
    while (applied < dim) {
      const Index width = used - applied;
      w.middleCols(applied, width) = apply(q.middleCols(applied, width));
      const Index nextWidth = std::min(width, dim - used);
      if (nextWidth > 0) {
        q.middleCols(used, nextWidth) = w.middleCols(applied, nextWidth);
        orthonormalize_block(q, used, q.middleCols(used, nextWidth), rng);
      }
      applied += width;
      used += nextWidth;
    }

    MatrixXd h = q.transpose() * w;
    h = 0.5 * (h + h.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<MatrixXd> solver(h);
    if (solver.info() != Eigen::Success) fail(ErrorKind::Numerical, "Ritz eigensolver failed");

    VectorXd theta(k);
    MatrixXd u(dim, k);
    for (int i = 0; i < k; ++i) {
      theta[i] = solver.eigenvalues()[dim - 1 - i];
      u.col(i) = solver.eigenvectors().col(dim - 1 - i);
    }
    MatrixXd x = q * u;
    const MatrixXd r = w * u - x * theta.asDiagonal();
    worst = 0.0;
    for (int i = 0; i < k; ++i) worst = std::max(worst, r.col(i).norm() / std::abs(theta[i]));

    if (worst <= opt.tolerance || dim >= n) {
      RawPairs out;
      out.values.resize(k);
      for (int i = 0; i < k; ++i) out.values[i] = sigma + 1.0 / theta[i];
      out.vectors = std::move(x);
      return out;
    }
    if (dim >= maxDim) break;
    dim = std::min(maxDim, round_up(dim + dim / 2));
  }
  std::ostringstream msg;
  msg << "spectral basis did not converge: relative Ritz residual " << worst << " > "
      << opt.tolerance;
  fail(ErrorKind::Numerical, msg.str());
}

}  // namespace

Eigen::MatrixXd SpectralBasis::project(const Eigen::MatrixXd& functions) const {
  return eigenfunctions.transpose() * (masses.asDiagonal() * functions);
}

SpectralBasis spectral_basis(const Mesh& mesh, int k, const SpectralOptions& options) {
  int components = 0;
  vertex_components(mesh, &components);
  return spectral_basis(cotangent_laplacian(mesh), k, options, components == 1);
}

SpectralBasis spectral_basis(const Laplacian& lap, int k, const SpectralOptions& options,
                             bool connected) {
  const Index n = lap.masses.size();
  if (k < 1 || k >= n)
    fail(ErrorKind::Input, "basis size k=" + std::to_string(k) + " must lie in [1, |V|=" +
                               std::to_string(n) + ")");
  EigenMethod method = options.method;
  if (method == EigenMethod::Auto) method = n <= 400 ? EigenMethod::Dense : EigenMethod::Krylov;
  RawPairs raw = method == EigenMethod::Dense ? dense_pairs(lap, k) : krylov_pairs(lap, k, options);

  // Ritz values come out sorted by theta; keep ascending lambda explicitly.
  std::vector<int> order(k);
  for (int i = 0; i < k; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return raw.values[a] < raw.values[b]; });

  SpectralBasis basis;
  basis.masses = lap.masses;
  basis.eigenvalues.resize(k);
  basis.eigenfunctions.resize(n, k);
  const VectorXd dis = lap.masses.cwiseSqrt().cwiseInverse();
  for (int i = 0; i < k; ++i) {
    basis.eigenvalues[i] = std::max(0.0, raw.values[order[i]]);
    basis.eigenfunctions.col(i) = dis.asDiagonal() * raw.vectors.col(order[i]);
  }

  // The kernel of a connected mesh Laplacian is exactly the constants.
  const double totalMass = lap.masses.sum();
  if (connected && basis.eigenvalues[0] < 1e-8) {
    basis.eigenvalues[0] = 0.0;
    basis.eigenfunctions.col(0).setConstant(1.0 / std::sqrt(totalMass));
    const VectorXd c0 = basis.eigenfunctions.col(0);
    for (int i = 1; i < k; ++i) {
      auto col = basis.eigenfunctions.col(i);
      col -= c0 * c0.dot(lap.masses.cwiseProduct(col));
      col /= std::sqrt(col.dot(lap.masses.cwiseProduct(col)));
    }
  }

  for (int i = 0; i < k; ++i) {
    auto col = basis.eigenfunctions.col(i);
    const double cutoff = 1e-10 * col.cwiseAbs().maxCoeff();
    for (Index r = 0; r < n; ++r) {
      if (std::abs(col[r]) > cutoff) {
        if (col[r] < 0) col = -col;
        break;
      }
    }
  }
  return basis;
}

double mass_orthonormality_residual(const SpectralBasis& basis) {
  const MatrixXd g = basis.project(basis.eigenfunctions);
  return (g - MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

double eigen_residual(const Laplacian& lap, const SpectralBasis& basis) {
  const MatrixXd kphi = lap.stiffness * basis.eigenfunctions;
  const MatrixXd aphi = lap.masses.asDiagonal() * basis.eigenfunctions;
  return (kphi - aphi * basis.eigenvalues.asDiagonal()).cwiseAbs().maxCoeff();
}

}  // namespace zsc
