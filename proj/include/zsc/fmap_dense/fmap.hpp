#pragma once

#include <Eigen/Core>

#include <functional>
#include <utility>
#include <vector>

#include "zsc/mesh_core/laplacian.hpp"
#include "zsc/mesh_core/mesh.hpp"
#include "zsc/mesh_core/spectral.hpp"
#include "zsc/sam3d_segment/sam3d.hpp"

namespace zsc {

/// |V| x d vertex functions; column c came from component
/// provenance[c].second of matched pair provenance[c].first.
struct DescriptorSet {
  Eigen::MatrixXd functions;
  std::vector<std::pair<int, int>> provenance;
};

struct DescriptorPair {
  DescriptorSet source, target;  // columns aligned
};

struct DescriptorOptions {
  int smoothingSteps = 3;
  double timeStep = -1.0;  // <= 0: squared mean edge length of each mesh
};

/// Splits each matched face set into edge-connected components, pairs them
/// across shapes by descending area rank and turns each into a vertex
/// indicator with unit mass integral, smoothed by implicit heat steps
/// (M + tK) f' = M f. Pairs empty on either side are skipped; if nothing
/// remains the result is Error{Input}.
DescriptorPair region_descriptors(const Mesh& mesh1, const Laplacian& lap1, const Mesh& mesh2,
                                  const Laplacian& lap2, const CoarseCorrespondence& corr,
                                  const DescriptorOptions& options = {});

/// Connected components (shared edges) of a face subset, largest area
/// first, ties by smallest face index.
std::vector<std::vector<int>> face_components(const Mesh& mesh, const std::vector<int>& faces);

/// C: k2 x k1, maps shape-1 spectral coefficients to shape 2.
struct FunctionalMap {
  Eigen::MatrixXd C;
};

struct FmapWeights {
  double commutativity = 1e-2;
  double orthogonality = 0.5;  // convex blend towards the nearest orthogonal matrix (k1 == k2)
  /// Eigenvalues enter the commutativity term divided by the largest
  /// eigenvalue of either basis.
  bool normalizeEigenvalues = true;
};

/// Row-wise closed-form minimizer of |C A - B|^2 + w |C L1 - L2 C|^2 with
/// A, B the mass-weighted spectral projections of the descriptors.
/// Rank-deficient rows take the minimum-norm solution (logged).
FunctionalMap solve_fmap(const DescriptorSet& descA, const DescriptorSet& descB, const SpectralBasis& basisA,
                         const SpectralBasis& basisB, const FmapWeights& weights = {});

/// |C A - B|_F for the given descriptors.
double fmap_data_residual(const FunctionalMap& map, const DescriptorSet& descA, const DescriptorSet& descB,
                          const SpectralBasis& basisA, const SpectralBasis& basisB);

/// For every shape-2 vertex, a shape-1 vertex.
using PointMap = std::vector<int>;

/// Nearest row of Phi1 C^T to each row of Phi2 (Euclidean; ties to the
/// lowest shape-1 index).
PointMap fmap_to_pointmap(const FunctionalMap& map, const SpectralBasis& basisA, const SpectralBasis& basisB);

/// Nearest orthogonal matrix U V^T of the SVD.
Eigen::MatrixXd nearest_orthogonal(const Eigen::MatrixXd& m);

struct IcpResult {
  FunctionalMap map;
  PointMap pointMap;
  int iterations = 0;
};

/// Spectral ICP: point map from C, then C <- nearest_orthogonal(Phi2^T M2
/// Phi1[T]), until `iters` or the point map stops changing. `observer`
/// sees each iteration's point map.
IcpResult icp_refine(const FunctionalMap& initial, const SpectralBasis& basisA, const SpectralBasis& basisB,
                     int iters = 10, const std::function<void(int, const PointMap&)>& observer = {});

struct DenseOptions {
  int basisSize = kDefaultBasisSize;
  FmapWeights weights;
  DescriptorOptions descriptors;
  int icpIters = 10;
  SpectralOptions spectral;
  std::function<void(int, const PointMap&)> icpObserver;
};

struct DenseResult {
  PointMap pointMap;       // shape 2 -> shape 1
  FunctionalMap initial;   // before refinement
  FunctionalMap refined;
  PointMap initialPointMap;
  int icpIterations = 0;
  int descriptorCount = 0;
};

DenseResult dense_correspondence(const Mesh& mesh1, const Mesh& mesh2, const CoarseCorrespondence& corr,
                                 const DenseOptions& options = {});

}  // namespace zsc
