#include "zsc/fmap_dense/fmap.hpp"

#include <spdlog/spdlog.h>

#include <Eigen/QR>
#include <Eigen/SVD>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <future>
#include <limits>
#include <numeric>

#include "zsc/common/error.hpp"

namespace zsc {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

std::vector<std::vector<int>> face_components(const Mesh& mesh, const std::vector<int>& faces) {
  const auto adjacency = face_adjacency(mesh);
  std::vector<char> member(mesh.num_faces(), 0), seen(mesh.num_faces(), 0);
  for (int f : faces) member.at(static_cast<std::size_t>(f)) = 1;
  std::vector<int> sorted = faces;
  std::sort(sorted.begin(), sorted.end());

  std::vector<std::vector<int>> components;
  for (int start : sorted) {
    if (seen[start]) continue;
    std::vector<int> comp, stack = {start};
    seen[start] = 1;
    while (!stack.empty()) {
      const int f = stack.back();
      stack.pop_back();
      comp.push_back(f);
      for (int g : adjacency[f])
        if (member[g] && !seen[g]) {
          seen[g] = 1;
          stack.push_back(g);
        }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  const auto areas = face_areas(mesh);
  std::vector<double> compArea;
  for (const auto& c : components) {
    double a = 0;
    for (int f : c) a += areas[f];
    compArea.push_back(a);
  }
  std::vector<std::size_t> order(components.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return compArea[a] > compArea[b]; });
  std::vector<std::vector<int>> out;
  for (std::size_t i : order) out.push_back(std::move(components[i]));
  return out;
}

namespace {

class HeatSmoother {
 public:
  HeatSmoother(const Mesh& mesh, const Laplacian& lap, const DescriptorOptions& options)
      : masses_(lap.masses), steps_(options.smoothingSteps) {
    if (steps_ <= 0) return;
    const double edge = mean_edge_length(mesh);
    const double t = options.timeStep > 0 ? options.timeStep : edge * edge;
    Eigen::SparseMatrix<double> system = lap.stiffness * t;
    for (Index i = 0; i < masses_.size(); ++i) system.coeffRef(i, i) += masses_[i];
    solver_.compute(system);
    if (solver_.info() != Eigen::Success) fail(ErrorKind::Numerical, "heat smoothing factorization failed");
  }

  VectorXd operator()(VectorXd f) const {
    for (int s = 0; s < steps_; ++s) f = solver_.solve(masses_.cwiseProduct(f)).eval();
    return f;
  }

 private:
  VectorXd masses_;
  int steps_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver_;
};

VectorXd component_indicator(const Mesh& mesh, const VectorXd& masses, const std::vector<int>& faces) {
  VectorXd f = VectorXd::Zero(static_cast<Index>(mesh.num_vertices()));
  for (int face : faces)
    for (int v : mesh.faces[face]) f[v] = 1.0;
  return f / masses.dot(f);
}

}  // namespace

DescriptorPair region_descriptors(const Mesh& mesh1, const Laplacian& lap1, const Mesh& mesh2,
                                  const Laplacian& lap2, const CoarseCorrespondence& corr,
                                  const DescriptorOptions& options) {
  const HeatSmoother smooth1(mesh1, lap1, options), smooth2(mesh2, lap2, options);
  std::vector<VectorXd> cols1, cols2;
  DescriptorPair out;
  for (std::size_t p = 0; p < corr.matchedPairs.size(); ++p) {
    const auto& pair = corr.matchedPairs[p];
    if (pair.sourceFaces.empty() || pair.targetFaces.empty()) {
      spdlog::warn("region pair {} ({} -> {}) is empty on {} shape; skipped", p, pair.source, pair.target,
                   pair.sourceFaces.empty() ? "the source" : "the target");
      continue;
    }
    const auto comps1 = face_components(mesh1, pair.sourceFaces);
    const auto comps2 = face_components(mesh2, pair.targetFaces);
    const std::size_t n = std::min(comps1.size(), comps2.size());
    if (comps1.size() != comps2.size())
      spdlog::warn("region pair {} has {} source and {} target components; {} surplus dropped", p, comps1.size(),
                   comps2.size(), std::max(comps1.size(), comps2.size()) - n);
    for (std::size_t c = 0; c < n; ++c) {
      cols1.push_back(smooth1(component_indicator(mesh1, lap1.masses, comps1[c])));
      cols2.push_back(smooth2(component_indicator(mesh2, lap2.masses, comps2[c])));
      out.source.provenance.emplace_back(static_cast<int>(p), static_cast<int>(c));
    }
  }
  if (cols1.empty()) fail(ErrorKind::Input, "coarse correspondence yields no descriptor: every region pair is empty");
  out.target.provenance = out.source.provenance;
  out.source.functions.resize(static_cast<Index>(mesh1.num_vertices()), static_cast<Index>(cols1.size()));
  out.target.functions.resize(static_cast<Index>(mesh2.num_vertices()), static_cast<Index>(cols2.size()));
  for (std::size_t c = 0; c < cols1.size(); ++c) {
    out.source.functions.col(static_cast<Index>(c)) = cols1[c];
    out.target.functions.col(static_cast<Index>(c)) = cols2[c];
  }
  return out;
}

namespace {

void check_descriptors(const DescriptorSet& a, const DescriptorSet& b, const SpectralBasis& ba,
                       const SpectralBasis& bb) {
  if (a.functions.cols() == 0 || a.functions.cols() != b.functions.cols())
    fail(ErrorKind::Input, "descriptor sets must be non-empty with equal column counts (" +
                               std::to_string(a.functions.cols()) + " vs " + std::to_string(b.functions.cols()) + ")");
  if (a.functions.rows() != ba.num_vertices() || b.functions.rows() != bb.num_vertices())
    fail(ErrorKind::Input, "descriptor rows do not match the basis vertex counts");
  if (!a.functions.allFinite() || !b.functions.allFinite())
    fail(ErrorKind::Numerical, "descriptor functions contain non-finite values");
}

}  // namespace

FunctionalMap solve_fmap(const DescriptorSet& descA, const DescriptorSet& descB, const SpectralBasis& basisA,
                         const SpectralBasis& basisB, const FmapWeights& weights) {
  check_descriptors(descA, descB, basisA, basisB);
  const MatrixXd a = basisA.project(descA.functions);  // k1 x d
  const MatrixXd b = basisB.project(descB.functions);  // k2 x d
  VectorXd l1 = basisA.eigenvalues, l2 = basisB.eigenvalues;
  if (weights.normalizeEigenvalues) {
    const double scale = std::max(l1.cwiseAbs().maxCoeff(), l2.cwiseAbs().maxCoeff());
    if (scale > 0) {
      l1 /= scale;
      l2 /= scale;
    }
  }
  const Index k1 = a.rows(), k2 = b.rows();
  const MatrixXd gram = a * a.transpose();
  const MatrixXd rhs = a * b.transpose();  // column i = A b_i
  MatrixXd c(k2, k1);
  int deficient = 0;
  for (Index i = 0; i < k2; ++i) {
    MatrixXd system = gram;
    for (Index j = 0; j < k1; ++j) {
      const double d = l1[j] - l2[i];
      system(j, j) += weights.commutativity * d * d;
    }
    Eigen::CompleteOrthogonalDecomposition<MatrixXd> cod(system);
    cod.setThreshold(1e-12);
    if (cod.rank() < k1) ++deficient;
    c.row(i) = cod.solve(rhs.col(i)).transpose();
  }
  if (deficient > 0)
    spdlog::warn("functional map system is rank deficient in {} of {} rows; using minimum-norm solutions",
                 deficient, k2);
  if (k1 == k2 && weights.orthogonality > 0)
    c = ((1.0 - weights.orthogonality) * c + weights.orthogonality * nearest_orthogonal(c)).eval();
  if (!c.allFinite()) fail(ErrorKind::Numerical, "functional map solve produced non-finite entries");
  return {c};
}

double fmap_data_residual(const FunctionalMap& map, const DescriptorSet& descA, const DescriptorSet& descB,
                          const SpectralBasis& basisA, const SpectralBasis& basisB) {
  return (map.C * basisA.project(descA.functions) - basisB.project(descB.functions)).norm();
}

MatrixXd nearest_orthogonal(const MatrixXd& m) {
  Eigen::JacobiSVD<MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().transpose();
}

PointMap fmap_to_pointmap(const FunctionalMap& map, const SpectralBasis& basisA, const SpectralBasis& basisB) {
  if (map.C.rows() != basisB.size() || map.C.cols() != basisA.size())
    fail(ErrorKind::Input, "functional map is " + std::to_string(map.C.rows()) + "x" +
                               std::to_string(map.C.cols()) + " but the bases have " +
                               std::to_string(basisB.size()) + " and " + std::to_string(basisA.size()) + " functions");
  const MatrixXd src = basisA.eigenfunctions * map.C.transpose();  // |V1| x k2
  const MatrixXd& dst = basisB.eigenfunctions;                      // |V2| x k2
  const VectorXd srcNorm = src.rowwise().squaredNorm();
  const Index n1 = src.rows(), n2 = dst.rows();
  PointMap out(static_cast<std::size_t>(n2), 0);
  constexpr Index kBlock = 256;
  for (Index start = 0; start < n2; start += kBlock) {
    const Index rows = std::min(kBlock, n2 - start);
    const MatrixXd cross = src * dst.middleRows(start, rows).transpose();  // n1 x rows
    for (Index j = 0; j < rows; ++j) {
      double best = std::numeric_limits<double>::infinity();
      Index bestIndex = 0;
      for (Index i = 0; i < n1; ++i) {
        const double d = srcNorm[i] - 2.0 * cross(i, j);
        if (d < best) {
          best = d;
          bestIndex = i;
        }
      }
      out[static_cast<std::size_t>(start + j)] = static_cast<int>(bestIndex);
    }
  }
  return out;
}

IcpResult icp_refine(const FunctionalMap& initial, const SpectralBasis& basisA, const SpectralBasis& basisB,
                     int iters, const std::function<void(int, const PointMap&)>& observer) {
  IcpResult result{initial, fmap_to_pointmap(initial, basisA, basisB), 0};
  const MatrixXd weighted = basisB.eigenfunctions.transpose() * basisB.masses.asDiagonal();  // k2 x |V2|
  MatrixXd pulled(basisB.num_vertices(), basisA.size());
  for (int it = 1; it <= iters; ++it) {
    for (std::size_t j = 0; j < result.pointMap.size(); ++j)
      pulled.row(static_cast<Index>(j)) = basisA.eigenfunctions.row(result.pointMap[j]);
    FunctionalMap next{nearest_orthogonal(weighted * pulled)};
    PointMap nextMap = fmap_to_pointmap(next, basisA, basisB);
    result.map = std::move(next);
    result.iterations = it;
    if (observer) observer(it, nextMap);
    const bool converged = nextMap == result.pointMap;
    result.pointMap = std::move(nextMap);
    if (converged) break;
  }
  return result;
}

DenseResult dense_correspondence(const Mesh& mesh1, const Mesh& mesh2, const CoarseCorrespondence& corr,
                                 const DenseOptions& options) {
  auto prepare = [&](const Mesh& mesh) {
    Laplacian lap = cotangent_laplacian(mesh);
    int components = 0;
    vertex_components(mesh, &components);
    SpectralBasis basis = spectral_basis(lap, options.basisSize, options.spectral, components == 1);
    return std::make_pair(std::move(lap), std::move(basis));
  };
  auto second = std::async(std::launch::async, prepare, std::cref(mesh2));
  const auto [lap1, basis1] = prepare(mesh1);
  const auto [lap2, basis2] = second.get();

  const DescriptorPair desc = region_descriptors(mesh1, lap1, mesh2, lap2, corr, options.descriptors);
  DenseResult out;
  out.descriptorCount = static_cast<int>(desc.source.functions.cols());
  out.initial = solve_fmap(desc.source, desc.target, basis1, basis2, options.weights);
  out.initialPointMap = fmap_to_pointmap(out.initial, basis1, basis2);
  const IcpResult icp = icp_refine(out.initial, basis1, basis2, options.icpIters, options.icpObserver);
  out.refined = icp.map;
  out.pointMap = icp.pointMap;
  out.icpIterations = icp.iterations;
  return out;
}

}  // namespace zsc
