#include <gtest/gtest.h>

#include <algorithm>
#include <memory>
#include <numeric>
#include <random>

#include "support/errors.hpp"
#include "support/scenes.hpp"
#include "zsc/sam3d_segment/sam3d.hpp"
#include "zsc/view_render/raster.hpp"

namespace zsc {
namespace {

using testing::kind_of;

FaceScoreMatrix matrix(std::initializer_list<std::vector<double>> rows) {
  FaceScoreMatrix x(rows.size(), {"a", "b", "c"});
  int f = 0;
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) x.scores(f, static_cast<Eigen::Index>(c)) = r[c];
    ++f;
  }
  return x;
}

TEST(Sam3d, ArgmaxExamples) {
  const auto x = matrix({{0.2, 0.5, 0.3}, {0, 0, 0}, {0.4, 0.4, 0.1}, {0, 0, 2}});
  EXPECT_EQ(assign_face_labels(x), (FaceLabels{1, kUnlabeled, 0, 2}));
}

TEST(Sam3d, ArgmaxMatchesBruteForceAndIgnoresRowScaling) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> small(0, 3);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  for (int trial = 0; trial < 200; ++trial) {
    FaceScoreMatrix x(20, {"a", "b", "c", "d"});
    for (Eigen::Index f = 0; f < 20; ++f)
      for (Eigen::Index r = 0; r < 4; ++r) x.scores(f, r) = small(rng);  // small integers force ties
    const FaceLabels labels = assign_face_labels(x);
    for (Eigen::Index f = 0; f < 20; ++f) {
      int expected = kUnlabeled;
      double best = 0;
      for (Eigen::Index r = 0; r < 4; ++r)
        if (x.scores(f, r) > best) best = x.scores(f, r), expected = static_cast<int>(r);
      EXPECT_EQ(labels[f], expected);
    }
    FaceScoreMatrix scaled = x;
    for (Eigen::Index f = 0; f < 20; ++f) scaled.scores.row(f) *= scale(rng);
    EXPECT_EQ(assign_face_labels(scaled), labels);
  }
}

TEST(Sam3d, VertexMajorityWithLowIndexTies) {
  Mesh m;
  m.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(1, 1, 0), Vec3(2, 0, 0)};
  m.faces = {{0, 1, 2}, {1, 3, 2}, {1, 4, 3}};
  const VertexLabels v = faces_to_vertices({2, 1, kUnlabeled}, m);
  EXPECT_EQ(v, (VertexLabels{2, 1, 1, 1, kUnlabeled}));
  EXPECT_EQ(kind_of([&] { faces_to_vertices({0}, m); }), ErrorKind::Input);
}

struct VoteScene {
  Mesh mesh = shapes::icosphere(2);
  RenderedView view;
  VoteScene() {
    Camera c;
    c.imageSize = 64;
    view = render(mesh, c);
  }
  MaskImage full(const std::string& label, double score) const {
    MaskImage m{GrayImage(64, 64), {label, {0, 0, 1, 1}, score}};
    std::fill(m.mask.pixels.begin(), m.mask.pixels.end(), 1);
    return m;
  }
};

TEST(Sam3d, VotesCountPixelsTimesScore) {
  VoteScene s;
  const auto votes = view_votes(s.view, {s.full("b", 0.5)}, {"a", "b"});
  std::map<std::int32_t, long> pixels;
  for (auto id : s.view.faceIndex.ids)
    if (id != kBackground) ++pixels[id];
  ASSERT_EQ(votes.size(), pixels.size());
  for (const auto& [face, region, amount] : votes) {
    EXPECT_EQ(region, 1);
    EXPECT_DOUBLE_EQ(amount, 0.5 * pixels[face]);
  }
  const auto unweighted = view_votes(s.view, {s.full("b", 0.5)}, {"a", "b"}, false);
  EXPECT_DOUBLE_EQ(std::get<2>(unweighted[0]), static_cast<double>(pixels[std::get<0>(unweighted[0])]));
}

TEST(Sam3d, VoteErrors) {
  VoteScene s;
  MaskImage small{GrayImage(8, 8), {"a", {0, 0, 1, 1}, 1}};
  EXPECT_EQ(kind_of([&] { view_votes(s.view, {small}, {"a"}); }), ErrorKind::Protocol);
  EXPECT_EQ(kind_of([&] { view_votes(s.view, {s.full("z", 1)}, {"a"}); }), ErrorKind::Validation);
  FaceScoreMatrix x(3, {"a"});
  EXPECT_EQ(kind_of([&] { add_votes(x, {{5, 0, 1.0}}); }), ErrorKind::Invariant);
}

TEST(Sam3d, NoiselessSegmentationRecoversVisibleRegions) {
  const auto scene = testing::four_region_blob(3);
  OracleGateway oracle(std::make_shared<SyntheticOracle>(testing::knowledge_of({&scene})));
  SegmentOptions opts;
  opts.views = 30;
  opts.imageSize = 128;
  const Segmentation seg = segment(scene.mesh, scene.regions, oracle, opts);
  ASSERT_EQ(seg.faceLabels.size(), scene.mesh.num_faces());
  int labeled = 0, wrong = 0;
  for (std::size_t f = 0; f < seg.faceLabels.size(); ++f) {
    if (seg.faceLabels[f] == kUnlabeled) continue;
    ++labeled;
    wrong += seg.faceLabels[f] != scene.faceLabels[f];
  }
  EXPECT_GT(labeled, 0.95 * scene.mesh.num_faces());
  EXPECT_LT(wrong, 0.01 * labeled);
}

TEST(Sam3d, ProcessingOrderDoesNotChangeScores) {
  const auto scene = testing::four_region_blob(2);
  OracleGateway oracle(std::make_shared<SyntheticOracle>(testing::knowledge_of({&scene})));
  SegmentOptions opts;
  opts.views = 12;
  opts.imageSize = 96;
  const Segmentation a = segment(scene.mesh, scene.regions, oracle, opts);
  opts.processingOrder.resize(12);
  std::iota(opts.processingOrder.begin(), opts.processingOrder.end(), 0);
  std::shuffle(opts.processingOrder.begin(), opts.processingOrder.end(), std::mt19937(5));
  opts.threads = 3;
  const Segmentation b = segment(scene.mesh, scene.regions, oracle, opts);
  EXPECT_TRUE((a.scores.scores.array() == b.scores.scores.array()).all());
  opts.processingOrder = {0, 1, 2};
  EXPECT_EQ(kind_of([&] { segment(scene.mesh, scene.regions, oracle, opts); }), ErrorKind::Input);
}

TEST(Sam3d, CoarseCorrespondenceSplitsMatchedAndUnmatched) {
  const RegionSet r1{"p", {"head", "arms", "legs", "hat"}}, r2{"d", {"head", "legs", "tail"}};
  SemanticMapping m;
  m.pairs = {{"head", "head"}, {"arms", "legs"}, {"legs", "legs"}};
  const FaceLabels l1{0, 1, 2, 3, kUnlabeled, 1}, l2{2, 1, 0, kUnlabeled, 1};
  const auto c = coarse_correspondence(l1, l2, m, r1, r2);
  ASSERT_EQ(c.matchedPairs.size(), 3u);
  EXPECT_EQ(c.matchedPairs[1].source, 1);
  EXPECT_EQ(c.matchedPairs[1].sourceFaces, (std::vector<int>{1, 5}));
  EXPECT_EQ(c.matchedPairs[1].targetFaces, (std::vector<int>{1, 4}));
  EXPECT_EQ(c.unmatchedSource, (std::vector<int>{3}));
  EXPECT_EQ(c.unmatchedTarget, (std::vector<int>{0}));
  // matched and unmatched face sets never overlap
  for (const auto& p : c.matchedPairs)
    for (int f : p.sourceFaces) EXPECT_EQ(std::count(c.unmatchedSource.begin(), c.unmatchedSource.end(), f), 0);

  SemanticMapping bad;
  bad.pairs = {{"wings", "head"}};
  EXPECT_EQ(kind_of([&] { coarse_correspondence(l1, l2, bad, r1, r2); }), ErrorKind::Validation);
  EXPECT_EQ(kind_of([&] { coarse_correspondence({7}, l2, m, r1, r2); }), ErrorKind::Input);
}

TEST(Sam3d, JsonAndPalette) {
  Segmentation s;
  s.scores = FaceScoreMatrix(2, {"a", "b"});
  s.faceLabels = {1, kUnlabeled};
  s.vertexLabels = {1, 1, kUnlabeled};
  const auto j = segmentation_json(s);
  EXPECT_EQ(j["faceLabels"], nlohmann::json({1, -1}));
  EXPECT_EQ(region_color(kUnlabeled), Eigen::Vector3d::Zero());
  EXPECT_EQ(region_color(0), region_color(12));
  EXPECT_NE(region_color(0), region_color(1));
}

}  // namespace
}  // namespace zsc
