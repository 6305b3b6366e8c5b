#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "support/brute.hpp"
#include "support/errors.hpp"
#include "support/scenes.hpp"
#include "support/temp_dir.hpp"
#include "zsc/eval_bench/metrics.hpp"

namespace zsc {
namespace {

using nlohmann::json;
using testing::kind_of;
using testing::TempDir;

SynonymTable small_table() {
  return SynonymTable({{"human", {"human", "person"}}, {"forelimb", {"forelimb", "arm", "arms"}}, {"head", {"head"}}});
}

TEST(Eval, ClassAccuracyUsesSynonyms) {
  const auto t = small_table();
  EXPECT_EQ(zs_class_acc({"person"}, {"human"}, t), 1.0);
  EXPECT_EQ(zs_class_acc({"A Person."}, {"human"}, t), 1.0);
  EXPECT_EQ(zs_class_acc({"person", "dog", "human", "cat"}, {"human", "human", "human", "human"}, t), 0.5);
  EXPECT_EQ(kind_of([&] { zs_class_acc({"x"}, {"zebra"}, t); }), ErrorKind::Input);
  EXPECT_EQ(kind_of([&] { zs_class_acc({"x", "y"}, {"human"}, t); }), ErrorKind::Input);
}

TEST(Eval, BuiltinTablesCoverTheExamples) {
  const auto classes = SynonymTable::builtin("classes");
  EXPECT_TRUE(classes.synonyms("human").count("person"));
  const auto regions = SynonymTable::builtin("regions");
  EXPECT_TRUE(regions.matches("arm", "forelimb"));
  EXPECT_FALSE(regions.matches("arm", "legs"));
  for (const auto& [term, syns] : classes.entries()) EXPECT_TRUE(syns.count(term)) << term;
  EXPECT_EQ(kind_of([] { SynonymTable::builtin("colors"); }), ErrorKind::Input);
  EXPECT_EQ(kind_of([] { SynonymTable::from_json(json{{"a", json::array()}}); }), ErrorKind::Schema);
}

TEST(Eval, F1Examples) {
  EXPECT_DOUBLE_EQ(f1_from_counts(3, 1, 1).f1, 0.75);
  const auto t = small_table();
  EXPECT_EQ(srgen_f1({"head", "arm"}, {"head", "arm"}, t).f1, 1.0);
  EXPECT_EQ(srgen_f1({"arm"}, {"forelimb"}, t).f1, 1.0);
  const auto s = srgen_f1({"head", "tail"}, {"head", "forelimb"}, t);
  EXPECT_EQ(s.tp, 1);
  EXPECT_DOUBLE_EQ(s.f1, 0.5);
  // exact matches are taken before synonym matches
  EXPECT_EQ(srgen_f1({"arm", "arms"}, {"arms", "forelimb"}, t).tp, 2);
}

TEST(Eval, MappingF1NeedsBothEnds) {
  const auto t = small_table();
  SemanticMapping p, g;
  p.pairs = {{"head", "head"}, {"arm", "head"}};
  g.pairs = {{"head", "head"}, {"forelimb", "forelimb"}};
  const auto s = srgen_f1(p, g, t);
  EXPECT_EQ(s.tp, 1);
  EXPECT_EQ(s.fp, 1);
  EXPECT_EQ(s.fn, 1);
}

TEST(Eval, F1IsPermutationInvariant) {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const testing::Vocabulary v(rng);
    auto p = testing::random_words(rng, v, 6), g = testing::random_words(rng, v, 6);
    const double f = srgen_f1(p, g, v.table).f1;
    std::shuffle(p.begin(), p.end(), rng);
    std::shuffle(g.begin(), g.end(), rng);
    EXPECT_EQ(srgen_f1(p, g, v.table).f1, f);
  }
}

TEST(Eval, SrIouExample) {
  const auto t = small_table();
  PairAnnotation a;
  a.gtRegions1 = a.gtRegions2 = {"c", {"head", "arms"}};
  a.gtFaceLabels1 = {"head", "head", "arms"};
  a.gtFaceLabels2 = {"head", "head", "head", "head", "arms", "arms", "arms", ""};
  const RegionSet pred{"c", {"head", "arm"}};
  const FaceLabels f1{0, kUnlabeled, 1}, f2{0, kUnlabeled, kUnlabeled, kUnlabeled, 1, 1, 1, 1};
  const SrIou r = sriou({pred, f1}, {pred, f2}, a, t);
  EXPECT_DOUBLE_EQ(r.i1, 0.75);
  EXPECT_DOUBLE_EQ(r.i2, 0.5);
  EXPECT_DOUBLE_EQ(r.i12, 0.625);

  const FaceLabels none1(3, kUnlabeled), none2(8, kUnlabeled);
  EXPECT_EQ(sriou({pred, none1}, {pred, none2}, a, t).i12, 0.0);

  const SrIou swapped = [&] {
    PairAnnotation b = a;
    std::swap(b.gtFaceLabels1, b.gtFaceLabels2);
    return sriou({pred, f2}, {pred, f1}, b, t);
  }();
  EXPECT_DOUBLE_EQ(swapped.i12, r.i12);
}

TEST(Eval, SrIouCountsSpuriousRegionsAsZero) {
  const auto t = small_table();
  const RegionSet gt{"c", {"head"}}, pred{"c", {"head", "tail"}};
  const double iou = shape_iou({pred, {0, 1}}, {"head", "head"}, gt, t);
  EXPECT_DOUBLE_EQ(iou, 0.25);  // head 1/2, tail 0
  std::vector<double> areas{3.0, 1.0};
  EXPECT_DOUBLE_EQ(shape_iou({pred, {0, 1}}, {"head", "head"}, gt, t, &areas), 0.375);
  EXPECT_EQ(kind_of([&] { shape_iou({pred, {0}}, {"head", "head"}, gt, t); }), ErrorKind::Input);
}

TEST(Eval, KeypointAccuracyExamples) {
  const auto t = small_table();
  PairAnnotation a;
  const RegionSet r{"c", {"head", "arms"}};
  for (int j = 0; j < kKeypointCount; ++j) {
    a.keypoints1.push_back(j);
    a.keypoints2.push_back(j);
    a.keypointLabels1.push_back(j % 2 ? "arms" : "head");
    a.keypointLabels2.push_back(j % 2 ? "forelimb" : "head");
  }
  VertexLabels v(kKeypointCount);
  for (int j = 0; j < kKeypointCount; ++j) v[j] = j % 2;
  const SemanticMapping id = identity_mapping(r);
  EXPECT_EQ(kp_label_acc(r, v, r, v, id, a, t), 1.0);
  SemanticMapping headOnly;
  headOnly.pairs = {{"head", "head"}};
  EXPECT_EQ(kp_label_acc(r, v, r, v, headOnly, a, t), 0.5);  // arms pair absent from the mapping
  VertexLabels unlabeled = v;
  for (int j = 0; j < kKeypointCount; j += 2) unlabeled[j] = kUnlabeled;
  EXPECT_EQ(kp_label_acc(r, unlabeled, r, v, id, a, t), 0.5);
}

TEST(Eval, BruteForceOracles) {
  std::mt19937 rng(2024);
  for (const auto& check : {testing::check_argmax(rng, 300), testing::check_f1(rng, 300),
                            testing::check_sriou(rng, 300), testing::check_kp_label_acc(rng, 300)}) {
    EXPECT_EQ(check.mismatches, 0);
    EXPECT_LE(check.maxDifference, 1e-12);
  }
}

TEST(Eval, GeodesicErrorExampleAndScaleInvariance) {
  const Mesh g = shapes::grid(10, 10);  // unit square, edge 0.1
  PairAnnotation a;
  a.id = "grid";
  a.keypoints1 = {0, 50};
  a.keypoints2 = {0, 50};
  PointMap map(g.num_vertices());
  for (std::size_t v = 0; v < map.size(); ++v) map[v] = static_cast<int>(v);
  EXPECT_EQ(avg_geodesic_error(map, a, g), 0.0);
  map[0] = 4;  // 0.4 along the bottom row
  EXPECT_NEAR(avg_geodesic_error(map, a, g), 0.2, 1e-12);
  const double e = avg_geodesic_error(map, a, g);
  for (double s : {1e-3, 0.5, 7.0, 1e3})
    EXPECT_NEAR(avg_geodesic_error(map, a, transformed(g, Eigen::Matrix3d::Identity(), s)), e, 1e-9);
}

TEST(Eval, GroundTruthInputsScorePerfectly) {
  const auto shape = testing::four_region_blob(2);
  const auto a = testing::self_annotation(shape);
  const auto syn = SynonymTable::builtin("regions");
  const VertexLabels vl = faces_to_vertices(shape.faceLabels, shape.mesh);
  EXPECT_EQ(sriou({shape.regions, shape.faceLabels}, {shape.regions, shape.faceLabels}, a, syn).i12, 1.0);
  EXPECT_EQ(kp_label_acc(shape.regions, vl, shape.regions, vl, a.gtMapping, a, syn), 1.0);
  PointMap identity(shape.mesh.num_vertices());
  for (std::size_t v = 0; v < identity.size(); ++v) identity[v] = static_cast<int>(v);
  EXPECT_EQ(avg_geodesic_error(identity, a, shape.mesh), 0.0);
  EXPECT_EQ(srgen_f1(a.gtMapping, a.gtMapping, syn).f1, 1.0);
}

struct ManifestFixture {
  TempDir dir;
  testing::LabeledShape shape = testing::four_region_blob(1);
  json record;

  ManifestFixture() {
    save_obj(dir / "a.obj", shape.mesh);
    const auto a = testing::self_annotation(shape);
    record = annotation_json(a, dir.path());
    record["shape1"] = "a.obj";
    record["shape2"] = "a.obj";
    record.erase("keypoint_labels_2");
  }
  std::filesystem::path write(const json& rec) const {
    const auto path = dir / "manifest.json";
    std::ofstream(path) << json{{"pairs", {rec}}}.dump();
    return path;
  }
};

TEST(Eval, LoadsAValidManifest) {
  ManifestFixture f;
  const auto pairs = load_dataset(f.write(f.record));
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].keypoints1.size(), static_cast<std::size_t>(kKeypointCount));
  EXPECT_EQ(pairs[0].keypointLabels2, pairs[0].keypointLabels1);
  EXPECT_EQ(pairs[0].shape1Path, f.dir / "a.obj");
  const auto k = synthetic_knowledge(pairs);
  EXPECT_EQ(k.shapes.at("a").className, "blob");
}

TEST(Eval, ManifestErrorsNameTheField) {
  ManifestFixture f;
  auto expect = [&](json rec, ErrorKind kind, const std::string& needle) {
    try {
      load_dataset(f.write(rec));
      ADD_FAILURE() << "accepted " << needle;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), kind) << e.what();
      EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
    }
  };
  json shortKeypoints = f.record;
  shortKeypoints["keypoints1"].erase(shortKeypoints["keypoints1"].size() - 1);
  expect(shortKeypoints, ErrorKind::Schema, "keypoints1");
  json outOfRange = f.record;
  outOfRange["keypoints2"][0] = 100000;
  expect(outOfRange, ErrorKind::Input, "out of range");
  json badLabel = f.record;
  badLabel["face_labels1"][0] = "tail";
  expect(badLabel, ErrorKind::Schema, "face_labels1");
  json badMapping = f.record;
  badMapping["mapping"].push_back({"north", "tail"});
  expect(badMapping, ErrorKind::Schema, "mapping");
  json missing = f.record;
  missing.erase("class2");
  expect(missing, ErrorKind::Schema, "class2");
  std::ofstream(f.dir / "broken.json") << "{";
  EXPECT_EQ(kind_of([&] { load_dataset(f.dir / "broken.json"); }), ErrorKind::Schema);
}

}  // namespace
}  // namespace zsc
