#include <gtest/gtest.h>

#include <random>

#include "support/errors.hpp"
#include "support/scenes.hpp"
#include "zsc/fmap_dense/fmap.hpp"
#include "zsc/mesh_core/laplacian.hpp"

namespace zsc {
namespace {

using Eigen::MatrixXd;
using testing::kind_of;

SpectralBasis random_basis(std::mt19937& rng, int n, int k) {
  std::uniform_int_distribution<int> coarse(-2, 2);  // few distinct values force distance ties
  SpectralBasis b;
  b.eigenfunctions.resize(n, k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) b.eigenfunctions(i, j) = coarse(rng);
  b.eigenvalues = Eigen::VectorXd::LinSpaced(k, 0.0, 1.0);
  b.masses = Eigen::VectorXd::Ones(n);
  return b;
}

TEST(Fmap, NearestOrthogonal) {
  std::mt19937 rng(3);
  std::normal_distribution<double> g;
  MatrixXd m(6, 6);
  for (int i = 0; i < 36; ++i) m.data()[i] = g(rng);
  const MatrixXd q = nearest_orthogonal(m);
  EXPECT_LT((q.transpose() * q - MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((nearest_orthogonal(q) - q).cwiseAbs().maxCoeff(), 1e-12);
  // the closest orthogonal matrix beats random rotations
  for (int t = 0; t < 20; ++t) {
    MatrixXd r(6, 6);
    for (int i = 0; i < 36; ++i) r.data()[i] = g(rng);
    const MatrixXd o = nearest_orthogonal(r);
    EXPECT_LE((m - q).norm(), (m - o).norm() + 1e-12);
  }
}

TEST(Fmap, PointMapMatchesBruteForce) {
  std::mt19937 rng(8);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = random_basis(rng, 300, 4), b = random_basis(rng, 270, 3);
    FunctionalMap map{MatrixXd::Zero(3, 4)};
    for (int i = 0; i < 3; ++i) map.C(i, i) = 1.0;  // integer entries keep distances exact
    if (trial % 2) map.C(0, 3) = 1.0;
    const PointMap fast = fmap_to_pointmap(map, a, b);
    const MatrixXd src = a.eigenfunctions * map.C.transpose();
    for (int j = 0; j < 270; ++j) {
      int best = 0;
      double bestD = (src.row(0) - b.eigenfunctions.row(j)).squaredNorm();
      for (int i = 1; i < 300; ++i) {
        const double d = (src.row(i) - b.eigenfunctions.row(j)).squaredNorm();
        if (d < bestD) bestD = d, best = i;
      }
      ASSERT_EQ(fast[j], best) << "trial " << trial << " vertex " << j;
    }
  }
  const auto a = random_basis(rng, 10, 4);
  EXPECT_EQ(kind_of([&] { fmap_to_pointmap({MatrixXd::Zero(2, 4)}, a, a); }), ErrorKind::Input);
}

TEST(Fmap, FaceComponentsByAreaThenIndex) {
  const Mesh g = shapes::grid(6, 1, 6.0, 1.0);  // faces 2i, 2i+1 form cell i
  const auto comps = face_components(g, {0, 1, 8, 9, 10, 11, 5});
  ASSERT_EQ(comps.size(), 3u);
  EXPECT_EQ(comps[0], (std::vector<int>{8, 9, 10, 11}));
  EXPECT_EQ(comps[1], (std::vector<int>{0, 1}));
  EXPECT_EQ(comps[2], (std::vector<int>{5}));
  const auto tie = face_components(g, {10, 11, 2, 3});
  EXPECT_EQ(tie[0], (std::vector<int>{2, 3}));
}

struct SelfScene {
  testing::LabeledShape shape = testing::four_region_blob(3);
  Laplacian lap = cotangent_laplacian(shape.mesh);
  CoarseCorrespondence corr =
      coarse_correspondence(shape.faceLabels, shape.faceLabels, identity_mapping(shape.regions), shape.regions,
                            shape.regions);
};

TEST(Fmap, DescriptorsKeepUnitMassUnderSmoothing) {
  SelfScene s;
  const auto d = region_descriptors(s.shape.mesh, s.lap, s.shape.mesh, s.lap, s.corr);
  ASSERT_EQ(d.source.functions.cols(), 4);
  for (Eigen::Index c = 0; c < 4; ++c) {
    EXPECT_NEAR(s.lap.masses.dot(d.source.functions.col(c)), 1.0, 1e-9);
    EXPECT_GT(d.source.functions.col(c).minCoeff(), -1e-12);
  }
  EXPECT_TRUE(d.source.functions.isApprox(d.target.functions));
  EXPECT_EQ(d.source.provenance, d.target.provenance);
}

TEST(Fmap, DescriptorsSkipEmptyPairsAndSurplusComponents) {
  SelfScene s;
  CoarseCorrespondence corr = s.corr;
  corr.matchedPairs[1].targetFaces.clear();
  const auto d = region_descriptors(s.shape.mesh, s.lap, s.shape.mesh, s.lap, corr);
  EXPECT_EQ(d.source.functions.cols(), 3);
  EXPECT_EQ(d.source.provenance[1].first, 2);
  for (auto& p : corr.matchedPairs) p.sourceFaces.clear();
  EXPECT_EQ(kind_of([&] { region_descriptors(s.shape.mesh, s.lap, s.shape.mesh, s.lap, corr); }),
            ErrorKind::Input);
}

TEST(Fmap, SelfMapSolveIsNearIdentity) {
  SelfScene s;
  const auto basis = spectral_basis(s.lap, 30);
  const auto d = region_descriptors(s.shape.mesh, s.lap, s.shape.mesh, s.lap, s.corr);
  const FunctionalMap map = solve_fmap(d.source, d.target, basis, basis);
  EXPECT_LT(fmap_data_residual(map, d.source, d.target, basis, basis), 1e-6);
  EXPECT_LT((map.C - MatrixXd::Identity(30, 30)).norm() / std::sqrt(30.0), 0.2);
  const PointMap pm = fmap_to_pointmap(map, basis, basis);
  int fixed = 0;
  for (std::size_t v = 0; v < pm.size(); ++v) fixed += pm[v] == static_cast<int>(v);
  EXPECT_GT(fixed, 0.5 * pm.size());
}

TEST(Fmap, SolveRejectsMismatchedDescriptors) {
  SelfScene s;
  const auto basis = spectral_basis(s.lap, 10);
  DescriptorSet a{MatrixXd::Ones(s.shape.mesh.num_vertices(), 2), {}}, b{MatrixXd::Ones(s.shape.mesh.num_vertices(), 3), {}};
  EXPECT_EQ(kind_of([&] { solve_fmap(a, b, basis, basis); }), ErrorKind::Input);
  b.functions = MatrixXd::Constant(s.shape.mesh.num_vertices(), 2, std::nan(""));
  EXPECT_EQ(kind_of([&] { solve_fmap(a, b, basis, basis); }), ErrorKind::Numerical);
}

TEST(Fmap, IcpStopsAtFixedPointAndReportsIterations) {
  SelfScene s;
  const auto basis = spectral_basis(s.lap, 20);
  const FunctionalMap identity{MatrixXd::Identity(20, 20)};
  int calls = 0;
  const IcpResult r = icp_refine(identity, basis, basis, 10, [&](int it, const PointMap&) { EXPECT_EQ(it, ++calls); });
  EXPECT_EQ(r.iterations, 1);
  EXPECT_EQ(calls, 1);
  for (std::size_t v = 0; v < r.pointMap.size(); ++v) EXPECT_EQ(r.pointMap[v], static_cast<int>(v));
  const IcpResult none = icp_refine(identity, basis, basis, 0);
  EXPECT_EQ(none.iterations, 0);
  EXPECT_EQ(none.map.C, identity.C);
}

TEST(Fmap, DenseSelfMapHasSmallError) {
  SelfScene s;
  const auto annotation = testing::self_annotation(s.shape);
  DenseOptions opts;
  opts.basisSize = 40;
  const DenseResult r = dense_correspondence(s.shape.mesh, s.shape.mesh, s.corr, opts);
  EXPECT_EQ(r.descriptorCount, 4);
  const double before = avg_geodesic_error(r.initialPointMap, annotation, s.shape.mesh);
  const double after = avg_geodesic_error(r.pointMap, annotation, s.shape.mesh);
  EXPECT_LT(after, 0.05);
  EXPECT_LE(after, before);
}

}  // namespace
}  // namespace zsc
