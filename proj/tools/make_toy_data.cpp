// Writes the toy dataset (meshes + manifest) and the small replay fixture
// set under data/toy. Usage: make_toy_data <out-dir>
#include <spdlog/spdlog.h>

#include <deque>
#include <filesystem>
#include <iostream>
#include <memory>

#include "zsc/common/text.hpp"
#include "zsc/eval_bench/metrics.hpp"
#include "zsc/mesh_core/geodesic.hpp"
#include "zsc/mesh_core/shapes.hpp"
#include "zsc/oracle/replay.hpp"
#include "zsc/pipeline_cli/pipeline.hpp"
#include "zsc/zs_classify/classify.hpp"

namespace fs = std::filesystem;
using namespace zsc;

namespace {

struct ToyShape {
  std::string file, cls;
  Mesh mesh;
  std::vector<std::string> faceRegions;
};

ToyShape make_shape(const std::string& file, const std::string& cls, std::uint64_t seed,
                    const std::vector<std::string>& names, const std::vector<Vec3>& directions) {
  // names[i] labels the faces closest to directions[i]; names may repeat
  ToyShape s{file, cls, normalize_unit_sphere(shapes::blob(3, seed)), {}};
  for (int l : shapes::direction_labels(s.mesh, directions)) s.faceRegions.push_back(names[l]);
  return s;
}

nlohmann::json pair_record(const std::string& id, const ToyShape& a, const ToyShape& b,
                           const std::vector<std::string>& regionsA, const std::vector<std::string>& regionsB,
                           const std::vector<std::pair<std::string, std::string>>& mapping) {
  // all toy shapes share the icosphere connectivity, so vertex i corresponds to vertex i
  const auto keypoints = farthest_points(a.mesh, kKeypointCount);
  const auto labels = gt_vertex_labels(a.mesh, a.faceRegions, RegionSet{a.cls, regionsA});
  nlohmann::json kpLabels = nlohmann::json::array(), map = nlohmann::json::array();
  for (int v : keypoints) kpLabels.push_back(labels[v]);
  for (const auto& [s, t] : mapping) map.push_back({s, t});
  return {{"id", id},           {"shape1", a.file},        {"shape2", b.file},
          {"class1", a.cls},    {"class2", b.cls},         {"regions1", regionsA},
          {"regions2", regionsB}, {"keypoints1", keypoints}, {"keypoints2", keypoints},
          {"keypoint_labels", kpLabels}, {"face_labels1", a.faceRegions}, {"face_labels2", b.faceRegions},
          {"mapping", map}};
}

// Hands out fixed captions in call order; the unification reply is fixed too.
class CannedBackend final : public OracleBackend {
 public:
  std::deque<std::string> captions;
  std::string reply;
  std::string caption(const ImageRef&, const std::string&) override {
    std::string c = captions.front();
    captions.pop_front();
    return c;
  }
  std::string chat(const ChatRequest&) override { return reply; }
  std::vector<Detection> detect(const ImageRef&, const std::vector<std::string>&, double) override { return {}; }
  std::vector<MaskImage> segment(const ImageRef&, const std::vector<Detection>&) override { return {}; }
  std::string name() const override { return "canned"; }
};

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_toy_data <out-dir>\n";
    return 2;
  }
  const fs::path out = argv[1];
  fs::create_directories(out);

  const std::vector<Vec3> halves = {Vec3::UnitX(), -Vec3::UnitX()};
  const auto tetra = shapes::tetrahedral_directions();
  const std::vector<std::string> cowRegions{"head", "torso"};
  const std::vector<std::string> wolfRegions{"head", "torso", "front legs", "back legs"};
  const std::vector<std::string> dogRegions{"head", "torso", "legs"};

  const ToyShape cowA = make_shape("cow_a.obj", "cow", 11, cowRegions, halves);
  const ToyShape cowB = make_shape("cow_b.obj", "cow", 12, cowRegions, halves);
  const ToyShape wolf = make_shape("wolf.obj", "wolf", 21, wolfRegions, tetra);
  const ToyShape dog = make_shape("dog.obj", "dog", 22, {"head", "torso", "legs", "legs"}, tetra);
  for (const ToyShape* s : {&cowA, &cowB, &wolf, &dog}) save_obj(out / s->file, s->mesh);

  nlohmann::json manifest = {
      {"pairs",
       {pair_record("cow-pair", cowA, cowB, cowRegions, cowRegions, {{"head", "head"}, {"torso", "torso"}}),
        pair_record("wolf-dog", wolf, dog, wolfRegions, dogRegions,
                    {{"head", "head"}, {"torso", "torso"}, {"front legs", "legs"}, {"back legs", "legs"}})}}};
  write_json(out / "manifest.json", manifest);
  write_text_file((out / "pairs.txt").string(), "# mesh pairs for record\ncow_a.obj cow_b.obj\nwolf.obj dog.obj\n");

  // replay fixtures for classifying wolf.obj with default settings
  auto canned = std::make_shared<CannedBackend>();
  canned->captions = {"a gray wolf", "a dog",   "a wolf standing", "wolf",  "a grey wolf", "a husky dog",
                      "a wolf",      "an animal", "a wolf",        "a fox", "a wolf",      "a gray wolf"};
  canned->reply = "wolf";
  const fs::path fixtures = out / "fixtures" / "classify_wolf";
  fs::remove_all(fixtures);
  auto store = std::make_shared<FixtureStore>(fixtures);
  OracleGateway oracle(std::make_shared<RecordingOracle>(canned, store));
  Mesh mesh = load_pipeline_mesh(out / wolf.file);
  ClassifyOptions opts;
  opts.threads = 1;
  const ClassLabel label = unify_classes(propose_classes(mesh, oracle, opts), oracle);
  spdlog::info("wrote {} ({} fixtures, label '{}')", out.string(), store->size(), label.label);
  return 0;
}
