// One line per acceptance criterion; exit status is the number of failures.
#include <spdlog/spdlog.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <string>

#include "support/brute.hpp"
#include "support/raycast.hpp"
#include "support/scenes.hpp"
#include "support/temp_dir.hpp"
#include "zsc/common/text.hpp"
#include "zsc/fmap_dense/fmap.hpp"
#include "zsc/mesh_core/spectral.hpp"
#include "zsc/pipeline_cli/pipeline.hpp"
#include "zsc/sam3d_segment/sam3d.hpp"

namespace zsc {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome metric_oracles() {
  std::mt19937 rng(1000);
  const std::pair<const char*, testing::OracleCheck> checks[] = {
      {"argmax", testing::check_argmax(rng, 1000)},
      {"f1", testing::check_f1(rng, 1000)},
      {"sriou", testing::check_sriou(rng, 1000)},
      {"kplabelacc", testing::check_kp_label_acc(rng, 1000)}};
  Outcome out{true, ""};
  for (const auto& [name, c] : checks) {
    out.pass = out.pass && c.instances >= 1000 && c.mismatches == 0 && c.maxDifference <= 1e-12;
    out.detail += fmt("%s %d/%d maxdiff %.1e; ", name, c.instances - c.mismatches, c.instances, c.maxDifference);
  }
  return out;
}

Outcome spectral() {
  const SpectralBasis b = spectral_basis(shapes::icosphere(3), 9);
  double worst = 0.0;
  for (int i = 1; i <= 8; ++i) {
    const double expected = i <= 3 ? 2.0 : 6.0;
    worst = std::max(worst, std::abs(b.eigenvalues[i] - expected) / expected);
  }
  const double ortho = mass_orthonormality_residual(b);
  const bool pass = std::abs(b.eigenvalues[0]) < 1e-6 && worst <= 0.05 && ortho < 1e-6;
  return {pass, fmt("lambda0 %.1e, worst relative error %.4f (tol 0.05), orthonormality %.1e (tol 1e-6)",
                    std::abs(b.eigenvalues[0]), worst, ortho)};
}

Outcome raster() {
  std::mt19937 rng(20);
  std::uniform_real_distribution<double> elev(-85, 85), azim(0, 360), rad(1.5, 2.5);
  const std::vector<Mesh> meshes = {normalize_unit_sphere(shapes::blob(3, 4)), normalize_unit_sphere(shapes::cube()),
                                    normalize_unit_sphere(shapes::icosphere(3))};
  RenderOptions colorId;
  colorId.shading = Shading::FaceId;
  long total = 0, decoded = 0, raycastTotal = 0, raycastAgree = 0;
  for (const Mesh& m : meshes)
    for (int view = 0; view < 20; ++view) {
      Camera cam;
      cam.elevationDeg = elev(rng);
      cam.azimuthDeg = azim(rng);
      cam.radius = rad(rng);
      cam.imageSize = 96;
      const RenderedView v = render(m, cam, colorId);
      const FaceIndexImage ref = testing::raycast_face_ids(m, cam);
      for (int y = 0; y < cam.imageSize; ++y)
        for (int x = 0; x < cam.imageSize; ++x) {
          if (testing::interior_pixel(v.faceIndex, x, y)) {
            ++total;
            decoded += decode_face_id(v.rgb.at(x, y)) == v.faceIndex.at(x, y);
          }
          if (testing::interior_pixel(ref, x, y)) {
            ++raycastTotal;
            raycastAgree += v.faceIndex.at(x, y) == ref.at(x, y);
          }
        }
    }
  const double a = double(decoded) / total, r = double(raycastAgree) / raycastTotal;
  return {a >= 0.995 && r >= 0.995,
          fmt("color-id decode %.5f, ray-cast reference %.5f over %ld pixels (tol 0.995)", a, r, total)};
}

struct SegmentScores {
  double sriou = 0, kp = 0;
};

SegmentScores segment_blob(const testing::LabeledShape& scene, const PairAnnotation& a, int views) {
  OracleGateway oracle(std::make_shared<SyntheticOracle>(testing::knowledge_of({&scene})));
  SegmentOptions opts;
  opts.views = views;
  const Segmentation seg = segment(scene.mesh, scene.regions, oracle, opts);
  const SynonymTable synonyms;
  const ShapePrediction p{scene.regions, seg.faceLabels};
  SegmentScores out;
  out.sriou = sriou(p, p, a, synonyms).i12;
  out.kp = kp_label_acc(scene.regions, seg.vertexLabels, scene.regions, seg.vertexLabels, a.gtMapping, a, synonyms);
  return out;
}

Outcome sam3d() {
  const auto scene = testing::four_region_blob(3);
  const PairAnnotation a = testing::self_annotation(scene);
  const SegmentScores many = segment_blob(scene, a, 180), few = segment_blob(scene, a, 30);
  const bool pass = many.sriou >= 0.95 && many.kp >= 0.95 && few.sriou <= many.sriou && few.kp <= many.kp;
  return {pass, fmt("v=180 SRIoU %.4f KPLabelAcc %.4f (tol 0.95); v=30 SRIoU %.4f KPLabelAcc %.4f", many.sriou,
                    many.kp, few.sriou, few.kp)};
}

Outcome dense_self_map() {
  const auto shape = testing::four_region_blob(4);
  const PairAnnotation a = testing::self_annotation(shape);
  const CoarseCorrespondence corr = coarse_correspondence(shape.faceLabels, shape.faceLabels,
                                                          identity_mapping(shape.regions), shape.regions,
                                                          shape.regions);
  std::vector<double> errors;
  DenseOptions opts;
  opts.basisSize = 60;
  opts.icpObserver = [&](int, const PointMap& map) { errors.push_back(avg_geodesic_error(map, a, shape.mesh)); };
  const DenseResult r = dense_correspondence(shape.mesh, shape.mesh, corr, opts);
  const double before = avg_geodesic_error(r.initialPointMap, a, shape.mesh);
  const double after = avg_geodesic_error(r.pointMap, a, shape.mesh);
  double worst = before;
  for (double e : errors) worst = std::max(worst, e);
  return {after < 0.05 && after <= before && worst <= before,
          fmt("|V| %zu k 60: error %.4f -> %.4f (tol 0.05), worst ICP iterate %.4f over %zu iterations",
              shape.mesh.num_vertices(), before, after, worst, errors.size())};
}

std::map<std::string, std::string> tree(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) out[fs::relative(e.path(), dir).generic_string()] = read_text_file(e.path().string());
  return out;
}

Outcome determinism() {
  const fs::path toy = fs::path(ZSC_SOURCE_DIR) / "data" / "toy";
  testing::TempDir dir;
  std::ofstream(dir / "pairs.txt") << (toy / "wolf.obj").string() << " " << (toy / "dog.obj").string() << "\n";
  const std::string fixtures = (dir / "fixtures").string();
  if (run_cli({"-o", (dir / "rec").string(), "--log-level", "warn", "--mode", "synthetic", "--dataset",
               (toy / "manifest.json").string(), "--fixtures", fixtures, "record", (dir / "pairs.txt").string()}) != 0)
    return {false, "recording failed"};
  auto replay = [&](const char* name) {
    return run_cli({"-o", (dir / name).string(), "--log-level", "warn", "--mode", "replay", "--fixtures", fixtures,
                    "match", (toy / "wolf.obj").string(), (toy / "dog.obj").string()});
  };
  if (replay("a") != 0 || replay("b") != 0) return {false, "replay failed"};
  const auto a = tree(dir / "a"), b = tree(dir / "b");

  const auto scene = testing::four_region_blob(3);
  OracleGateway oracle(std::make_shared<SyntheticOracle>(testing::knowledge_of({&scene})));
  SegmentOptions opts;
  opts.views = 60;
  opts.imageSize = 256;
  const Segmentation base = segment(scene.mesh, scene.regions, oracle, opts);
  opts.processingOrder.resize(60);
  std::iota(opts.processingOrder.begin(), opts.processingOrder.end(), 0);
  std::shuffle(opts.processingOrder.begin(), opts.processingOrder.end(), std::mt19937(60));
  opts.threads = 4;
  const Segmentation permuted = segment(scene.mesh, scene.regions, oracle, opts);
  const bool sameScores = (base.scores.scores.array() == permuted.scores.scores.array()).all();
  return {a == b && a.size() >= 12 && sameScores,
          fmt("replay trees %s (%zu files); permuted view order scores %s", a == b ? "identical" : "differ", a.size(),
              sameScores ? "bit-identical" : "differ")};
}

Outcome scaling() {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> value(0.0, 1.0), factor(1e-3, 1e3);
  int argmaxMismatch = 0;
  for (int t = 0; t < 1000; ++t) {
    FaceScoreMatrix x(20, std::vector<std::string>(5, "r"));
    for (Eigen::Index i = 0; i < x.scores.size(); ++i) x.scores.data()[i] = value(rng) < 0.3 ? 0.0 : value(rng);
    FaceScoreMatrix scaled = x;
    for (Eigen::Index f = 0; f < x.scores.rows(); ++f) scaled.scores.row(f) *= factor(rng);
    argmaxMismatch += assign_face_labels(x) != assign_face_labels(scaled);
  }
  const auto shape = testing::four_region_blob(3);
  const PairAnnotation a = testing::self_annotation(shape);
  std::uniform_int_distribution<int> vertex(0, static_cast<int>(shape.mesh.num_vertices()) - 1);
  double worst = 0.0;
  for (int t = 0; t < 5; ++t) {
    PointMap map(shape.mesh.num_vertices());
    for (int& v : map) v = vertex(rng);
    const double base = avg_geodesic_error(map, a, shape.mesh);
    for (double s : {1e-3, 0.37, 2.0, 541.0}) {
      const Mesh scaled = transformed(shape.mesh, Eigen::Matrix3d::Identity(), s);
      worst = std::max(worst, std::abs(avg_geodesic_error(map, a, scaled) - base));
    }
  }
  return {argmaxMismatch == 0 && worst <= 1e-9,
          fmt("argmax mismatches %d/1000 under row scaling; geodesic error max change %.2e (tol 1e-9)",
              argmaxMismatch, worst)};
}

struct Criterion {
  const char* name;
  double budgetSeconds;
  std::function<Outcome()> check;
};

}  // namespace
}  // namespace zsc

int main() {
  using namespace zsc;
  spdlog::set_level(spdlog::level::err);
  const Criterion criteria[] = {
      {"metric-oracle-equivalence", 10, metric_oracles},
      {"spectral-correctness", 30, spectral},
      {"raster-face-buffer-cross-check", 30, raster},
      {"synthetic-end-to-end-segmentation", 180, sam3d},
      {"dense-self-map", 120, dense_self_map},
      {"determinism", 600, determinism},
      {"scaling-invariances", 60, scaling},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.pass && seconds < c.budgetSeconds;
    failures += !pass;
    std::printf("%s %s: %s %.1fs (budget %.0fs)\n", pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), seconds,
                c.budgetSeconds);
    std::fflush(stdout);
  }
  return failures;
}
