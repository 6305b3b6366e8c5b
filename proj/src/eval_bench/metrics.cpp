#include "zsc/eval_bench/metrics.hpp"

#include <spdlog/spdlog.h>

#include <cmath>
#include <fstream>
#include <limits>

#include "zsc/common/assets.hpp"
#include "zsc/common/error.hpp"
#include "zsc/common/text.hpp"
#include "zsc/mesh_core/geodesic.hpp"

namespace zsc {

using nlohmann::json;

SynonymTable::SynonymTable(std::map<std::string, std::set<std::string>> entries) {
  for (auto& [term, syns] : entries) {
    const std::string key = normalize_label(term);
    if (key.empty()) fail(ErrorKind::Schema, "synonym table has an empty term");
    auto& set = entries_[key];
    set.insert(key);
    for (const auto& s : syns) set.insert(normalize_label(s));
  }
  for (const auto& [key, set] : entries_)
    for (const auto& s : set) groups_[s].insert(key);
}

SynonymTable SynonymTable::from_json(const json& j) {
  if (!j.is_object()) fail(ErrorKind::Schema, "synonym table must be a JSON object");
  std::map<std::string, std::set<std::string>> entries;
  for (const auto& [term, list] : j.items()) {
    if (!list.is_array() || list.empty())
      fail(ErrorKind::Schema, "synonyms of '" + term + "' must be a non-empty array");
    for (const auto& s : list) {
      if (!s.is_string()) fail(ErrorKind::Schema, "synonyms of '" + term + "' must be strings");
      entries[term].insert(s.get<std::string>());
    }
  }
  return SynonymTable(std::move(entries));
}

SynonymTable SynonymTable::builtin(const std::string& section) {
  const json all = json::parse(asset("synonyms.json"));
  if (!all.contains(section)) fail(ErrorKind::Input, "no synonym section '" + section + "'");
  return from_json(all[section]);
}

bool SynonymTable::contains(const std::string& canonical) const {
  return entries_.count(normalize_label(canonical)) > 0;
}

const std::set<std::string>& SynonymTable::synonyms(const std::string& canonical) const {
  auto it = entries_.find(normalize_label(canonical));
  if (it == entries_.end()) fail(ErrorKind::Input, "synonym table has no entry for '" + canonical + "'");
  return it->second;
}

bool SynonymTable::matches(const std::string& predicted, const std::string& truth) const {
  const std::string p = normalize_label(predicted), g = normalize_label(truth);
  if (p.empty() || g.empty()) return false;
  if (p == g) return true;
  auto gp = groups_.find(p), gg = groups_.find(g);
  if (gp == groups_.end() || gg == groups_.end()) return false;
  for (const auto& c : gp->second)
    if (gg->second.count(c)) return true;
  return false;
}

double zs_class_acc(const std::vector<std::string>& predictions, const std::vector<std::string>& truths,
                    const SynonymTable& synonyms) {
  if (predictions.size() != truths.size())
    fail(ErrorKind::Input, "prediction and GT class lists differ in length");
  if (truths.empty()) return 0.0;
  int correct = 0;
  for (std::size_t i = 0; i < truths.size(); ++i)
    correct += synonyms.synonyms(truths[i]).count(normalize_label(predictions[i])) > 0;
  return static_cast<double>(correct) / static_cast<double>(truths.size());
}

F1Score f1_from_counts(int tp, int fp, int fn) {
  const int denom = 2 * tp + fp + fn;
  return {tp, fp, fn, denom == 0 ? 1.0 : 2.0 * tp / denom};
}

namespace {

template <typename Item, typename Exact, typename Match>
F1Score greedy_f1(const std::vector<Item>& predicted, const std::vector<Item>& truth, Exact exact, Match match) {
  std::vector<char> usedPred(predicted.size(), 0), usedTruth(truth.size(), 0);
  int tp = 0;
  for (int pass = 0; pass < 2; ++pass)
    for (std::size_t g = 0; g < truth.size(); ++g) {
      if (usedTruth[g]) continue;
      for (std::size_t p = 0; p < predicted.size(); ++p) {
        if (usedPred[p]) continue;
        if (pass == 0 ? exact(predicted[p], truth[g]) : match(predicted[p], truth[g])) {
          usedPred[p] = usedTruth[g] = 1;
          ++tp;
          break;
        }
      }
    }
  return f1_from_counts(tp, static_cast<int>(predicted.size()) - tp, static_cast<int>(truth.size()) - tp);
}

}  // namespace

F1Score srgen_f1(const std::vector<std::string>& predicted, const std::vector<std::string>& truth,
                 const SynonymTable& synonyms) {
  return greedy_f1(
      predicted, truth, [](const std::string& p, const std::string& g) { return normalize_label(p) == normalize_label(g); },
      [&](const std::string& p, const std::string& g) { return synonyms.matches(p, g); });
}

F1Score srgen_f1(const SemanticMapping& predicted, const SemanticMapping& truth, const SynonymTable& synonyms) {
  using Pair = std::pair<std::string, std::string>;
  return greedy_f1(
      predicted.pairs, truth.pairs,
      [](const Pair& p, const Pair& g) {
        return normalize_label(p.first) == normalize_label(g.first) &&
               normalize_label(p.second) == normalize_label(g.second);
      },
      [&](const Pair& p, const Pair& g) {
        return synonyms.matches(p.first, g.first) && synonyms.matches(p.second, g.second);
      });
}

namespace {

// Predicted region -> GT region index (exact name first, then synonyms), or -1.
std::vector<int> match_regions(const RegionSet& predicted, const RegionSet& gt, const SynonymTable& synonyms) {
  std::vector<int> out(predicted.size(), -1);
  for (std::size_t p = 0; p < predicted.size(); ++p) {
    out[p] = gt.index_of(predicted.regions[p]);
    if (out[p] >= 0) continue;
    for (std::size_t g = 0; g < gt.size(); ++g)
      if (synonyms.matches(predicted.regions[p], gt.regions[g])) {
        out[p] = static_cast<int>(g);
        break;
      }
  }
  return out;
}

}  // namespace

double shape_iou(const ShapePrediction& predicted, const std::vector<std::string>& gtFaceLabels,
                 const RegionSet& gtRegions, const SynonymTable& synonyms, const std::vector<double>* faceAreas) {
  const std::size_t faces = gtFaceLabels.size();
  if (predicted.faceLabels.size() != faces)
    fail(ErrorKind::Input, "predicted and GT face label counts differ (" +
                               std::to_string(predicted.faceLabels.size()) + " vs " + std::to_string(faces) + ")");
  if (faceAreas && faceAreas->size() != faces) fail(ErrorKind::Input, "face area count mismatch");
  const std::vector<int> toGt = match_regions(predicted.regions, gtRegions, synonyms);
  const std::size_t nGt = gtRegions.size(), nUniverse = nGt + predicted.regions.size();

  // Universe slot per face: GT region index, or nGt + p for unmatched predicted region p.
  std::vector<double> inter(nUniverse, 0), predSize(nUniverse, 0), gtSize(nUniverse, 0);
  for (std::size_t f = 0; f < faces; ++f) {
    const double w = faceAreas ? (*faceAreas)[f] : 1.0;
    int g = -1;
    if (!gtFaceLabels[f].empty()) {
      g = gtRegions.index_of(gtFaceLabels[f]);
      if (g < 0) fail(ErrorKind::Input, "GT face label '" + gtFaceLabels[f] + "' is not a GT region");
      gtSize[g] += w;
    }
    const int p = predicted.faceLabels[f];
    if (p == kUnlabeled) continue;
    if (p < 0 || p >= static_cast<int>(predicted.regions.size()))
      fail(ErrorKind::Input, "predicted face label " + std::to_string(p) + " is outside its region set");
    const int slot = toGt[p] >= 0 ? toGt[p] : static_cast<int>(nGt) + p;
    predSize[slot] += w;
    if (slot == g) inter[slot] += w;
  }
  double sum = 0;
  int counted = 0;
  for (std::size_t r = 0; r < nUniverse; ++r) {
    const double uni = predSize[r] + gtSize[r] - inter[r];
    if (r >= nGt && predSize[r] == 0) continue;  // unmatched predicted region with no faces
    if (uni == 0) continue;
    sum += inter[r] / uni;
    ++counted;
  }
  return counted == 0 ? 0.0 : sum / counted;
}

SrIou sriou(const ShapePrediction& shape1, const ShapePrediction& shape2, const PairAnnotation& a,
            const SynonymTable& synonyms, const std::vector<double>* areas1, const std::vector<double>* areas2) {
  SrIou out;
  out.i1 = shape_iou(shape1, a.gtFaceLabels1, a.gtRegions1, synonyms, areas1);
  out.i2 = shape_iou(shape2, a.gtFaceLabels2, a.gtRegions2, synonyms, areas2);
  out.i12 = 0.5 * (out.i1 + out.i2);
  return out;
}

double kp_label_acc(const RegionSet& regions1, const VertexLabels& labels1, const RegionSet& regions2,
                    const VertexLabels& labels2, const SemanticMapping& mapping, const PairAnnotation& a,
                    const SynonymTable& synonyms) {
  const std::size_t n = a.keypoints1.size();
  if (n == 0 || a.keypoints2.size() != n || a.keypointLabels1.size() != n || a.keypointLabels2.size() != n)
    fail(ErrorKind::Input, "keypoint arrays of pair '" + a.id + "' are empty or misaligned");
  auto name = [](const RegionSet& regions, const VertexLabels& labels, int vertex) -> const std::string* {
    if (vertex < 0 || static_cast<std::size_t>(vertex) >= labels.size())
      fail(ErrorKind::Input, "keypoint vertex " + std::to_string(vertex) + " is outside the label array");
    const int l = labels[vertex];
    if (l == kUnlabeled) return nullptr;
    if (l < 0 || static_cast<std::size_t>(l) >= regions.size())
      fail(ErrorKind::Input, "vertex label " + std::to_string(l) + " is outside its region set");
    return &regions.regions[l];
  };
  int correct = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::string* n1 = name(regions1, labels1, a.keypoints1[j]);
    const std::string* n2 = name(regions2, labels2, a.keypoints2[j]);
    if (!n1 || !n2) continue;
    correct += synonyms.matches(*n1, a.keypointLabels1[j]) && synonyms.matches(*n2, a.keypointLabels2[j]) &&
               mapping.contains(*n1, *n2);
  }
  return static_cast<double>(correct) / static_cast<double>(n);
}

double avg_geodesic_error(const PointMap& map, const PairAnnotation& a, const Mesh& mesh1) {
  const std::size_t n = a.keypoints1.size();
  if (n == 0 || a.keypoints2.size() != n) fail(ErrorKind::Input, "keypoints of pair '" + a.id + "' are misaligned");
  const double scale = std::sqrt(total_area(mesh1));
  const EdgeGeodesics geo(mesh1);
  double sum = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const int p2 = a.keypoints2[j];
    if (p2 < 0 || static_cast<std::size_t>(p2) >= map.size())
      fail(ErrorKind::Input, "keypoint " + std::to_string(p2) + " is outside the point map");
    const auto d = geo.from(a.keypoints1[j]);
    const int target = map[p2];
    if (target < 0 || static_cast<std::size_t>(target) >= d.size())
      fail(ErrorKind::Input, "point map entry " + std::to_string(target) + " is outside shape 1");
    double dist = d[target];
    if (!std::isfinite(dist)) {
      double cap = 0;
      for (double x : d)
        if (std::isfinite(x)) cap = std::max(cap, x);
      spdlog::warn("pair '{}' keypoint {}: mapped vertex unreachable, capped at {}", a.id, j, cap);
      dist = cap;
    }
    sum += dist / scale;
  }
  return sum / static_cast<double>(n);
}

std::vector<std::string> gt_vertex_labels(const Mesh& mesh, const std::vector<std::string>& faceLabels,
                                          const RegionSet& regions) {
  const auto incident = vertex_faces(mesh);
  std::vector<std::string> out(mesh.num_vertices());
  for (std::size_t v = 0; v < incident.size(); ++v) {
    std::vector<int> counts(regions.size(), 0);
    for (int f : incident[v])
      if (!faceLabels[f].empty()) {
        const int r = regions.index_of(faceLabels[f]);
        if (r >= 0) ++counts[r];
      }
    int best = 0;
    for (std::size_t r = 0; r < counts.size(); ++r)
      if (counts[r] > best) {
        best = counts[r];
        out[v] = regions.regions[r];
      }
  }
  return out;
}

namespace {

[[noreturn]] void schema(const std::string& pair, const std::string& field, const std::string& what) {
  fail(ErrorKind::Schema, "pair '" + pair + "' field '" + field + "': " + what);
}

const json& field(const json& rec, const std::string& pair, const char* key) {
  if (!rec.contains(key)) schema(pair, key, "missing");
  return rec[key];
}

std::vector<std::string> strings(const json& rec, const std::string& pair, const char* key) {
  const json& j = field(rec, pair, key);
  if (!j.is_array()) schema(pair, key, "expected an array of strings");
  std::vector<std::string> out;
  for (const auto& s : j) {
    if (!s.is_string()) schema(pair, key, "expected an array of strings");
    out.push_back(to_lower(trim(s.get<std::string>())));
  }
  return out;
}

std::vector<int> indices(const json& rec, const std::string& pair, const char* key, std::size_t limit) {
  const json& j = field(rec, pair, key);
  if (!j.is_array()) schema(pair, key, "expected an array of integers");
  if (j.size() != static_cast<std::size_t>(kKeypointCount))
    schema(pair, key, "expected " + std::to_string(kKeypointCount) + " entries, found " + std::to_string(j.size()));
  std::vector<int> out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) schema(pair, key, "expected an array of integers");
    const auto v = x.get<long long>();
    if (v < 0 || static_cast<std::size_t>(v) >= limit)
      fail(ErrorKind::Input, "pair '" + pair + "' field '" + key + "': index " + std::to_string(v) +
                                 " out of range for " + std::to_string(limit) + " vertices");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

void check_labels(const std::vector<std::string>& labels, const RegionSet& regions, const std::string& pair,
                  const char* key, bool allowEmpty) {
  for (const auto& l : labels) {
    if (l.empty() && allowEmpty) continue;
    if (regions.index_of(l) < 0) schema(pair, key, "label '" + l + "' is not in the region set");
  }
}

}  // namespace

std::vector<PairAnnotation> load_dataset(const std::filesystem::path& manifest) {
  json root;
  try {
    root = json::parse(read_text_file(manifest.string()));
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Schema, manifest.string() + ": malformed manifest: " + e.what());
  }
  if (!root.is_object() || !root.contains("pairs") || !root["pairs"].is_array())
    fail(ErrorKind::Schema, manifest.string() + ": manifest needs a 'pairs' array");
  const auto base = manifest.parent_path();
  std::vector<PairAnnotation> out;
  std::set<std::string> ids;
  for (const json& rec : root["pairs"]) {
    PairAnnotation a;
    if (!rec.is_object() || !rec.contains("id") || !rec["id"].is_string())
      fail(ErrorKind::Schema, manifest.string() + ": every pair needs a string 'id'");
    a.id = rec["id"].get<std::string>();
    if (!ids.insert(a.id).second) schema(a.id, "id", "duplicate pair id");
    auto path = [&](const char* key) {
      const json& j = field(rec, a.id, key);
      if (!j.is_string()) schema(a.id, key, "expected a path string");
      return base / j.get<std::string>();
    };
    a.shape1Path = path("shape1");
    a.shape2Path = path("shape2");
    const Mesh m1 = load_mesh(a.shape1Path), m2 = load_mesh(a.shape2Path);
    auto cls = [&](const char* key) {
      const json& j = field(rec, a.id, key);
      if (!j.is_string() || trim(j.get<std::string>()).empty()) schema(a.id, key, "expected a class name");
      return normalize_label(j.get<std::string>());
    };
    a.gtClass1 = cls("class1");
    a.gtClass2 = cls("class2");
    a.gtRegions1 = {a.gtClass1, strings(rec, a.id, "regions1")};
    a.gtRegions2 = {a.gtClass2, strings(rec, a.id, "regions2")};
    try {
      a.gtRegions1.validate();
      a.gtRegions2.validate();
    } catch (const Error& e) {
      schema(a.id, "regions", e.what());
    }
    a.keypoints1 = indices(rec, a.id, "keypoints1", m1.num_vertices());
    a.keypoints2 = indices(rec, a.id, "keypoints2", m2.num_vertices());
    a.gtFaceLabels1 = strings(rec, a.id, "face_labels1");
    a.gtFaceLabels2 = strings(rec, a.id, "face_labels2");
    if (a.gtFaceLabels1.size() != m1.num_faces())
      schema(a.id, "face_labels1", "expected " + std::to_string(m1.num_faces()) + " entries");
    if (a.gtFaceLabels2.size() != m2.num_faces())
      schema(a.id, "face_labels2", "expected " + std::to_string(m2.num_faces()) + " entries");
    check_labels(a.gtFaceLabels1, a.gtRegions1, a.id, "face_labels1", true);
    check_labels(a.gtFaceLabels2, a.gtRegions2, a.id, "face_labels2", true);
    a.keypointLabels1 = strings(rec, a.id, "keypoint_labels");
    if (a.keypointLabels1.size() != static_cast<std::size_t>(kKeypointCount))
      schema(a.id, "keypoint_labels", "expected " + std::to_string(kKeypointCount) + " entries");
    check_labels(a.keypointLabels1, a.gtRegions1, a.id, "keypoint_labels", false);
    if (rec.contains("keypoint_labels_2")) {
      a.keypointLabels2 = strings(rec, a.id, "keypoint_labels_2");
      if (a.keypointLabels2.size() != static_cast<std::size_t>(kKeypointCount))
        schema(a.id, "keypoint_labels_2", "expected " + std::to_string(kKeypointCount) + " entries");
    } else {
      const auto vertexLabels = gt_vertex_labels(m2, a.gtFaceLabels2, a.gtRegions2);
      for (int v : a.keypoints2) a.keypointLabels2.push_back(vertexLabels[v]);
    }
    check_labels(a.keypointLabels2, a.gtRegions2, a.id, "keypoint_labels_2", true);
    const json& mapping = field(rec, a.id, "mapping");
    if (!mapping.is_array()) schema(a.id, "mapping", "expected an array of [source, target] pairs");
    for (const auto& p : mapping) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
        schema(a.id, "mapping", "expected an array of [source, target] pairs");
      const std::string s = to_lower(trim(p[0].get<std::string>())), t = to_lower(trim(p[1].get<std::string>()));
      if (!a.gtMapping.contains(s, t)) a.gtMapping.pairs.emplace_back(s, t);
    }
    try {
      a.gtMapping.validate(a.gtRegions1, a.gtRegions2);
    } catch (const Error& e) {
      schema(a.id, "mapping", e.what());
    }
    out.push_back(std::move(a));
  }
  return out;
}

SyntheticKnowledge synthetic_knowledge(const std::vector<PairAnnotation>& pairs) {
  SyntheticKnowledge k;
  auto add_shape = [&](const std::string& pair, const std::filesystem::path& path, const std::string& cls,
                       const std::vector<std::string>& faces, const RegionSet& regions) {
    const std::string id = path.stem().string();
    SyntheticKnowledge::Shape shape{cls, faces};
    auto [it, fresh] = k.shapes.emplace(id, shape);
    if (!fresh && (it->second.className != cls || it->second.faceRegions != faces))
      schema(pair, "shape", "mesh '" + id + "' is annotated differently by another pair");
    auto [rit, rfresh] = k.classRegions.emplace(cls, regions.regions);
    if (!rfresh && rit->second != regions.regions)
      schema(pair, "regions", "class '" + cls + "' has conflicting region sets");
  };
  for (const auto& a : pairs) {
    add_shape(a.id, a.shape1Path, a.gtClass1, a.gtFaceLabels1, a.gtRegions1);
    add_shape(a.id, a.shape2Path, a.gtClass2, a.gtFaceLabels2, a.gtRegions2);
    auto [mit, fresh] = k.mappings.emplace(std::make_pair(a.gtClass1, a.gtClass2), a.gtMapping.pairs);
    if (!fresh && mit->second != a.gtMapping.pairs)
      schema(a.id, "mapping", "conflicting mappings for '" + a.gtClass1 + "' -> '" + a.gtClass2 + "'");
  }
  return k;
}

json annotation_json(const PairAnnotation& a, const std::filesystem::path& relativeTo) {
  json mapping = json::array();
  for (const auto& [s, t] : a.gtMapping.pairs) mapping.push_back({s, t});
  return {{"id", a.id},
          {"shape1", std::filesystem::relative(a.shape1Path, relativeTo).generic_string()},
          {"shape2", std::filesystem::relative(a.shape2Path, relativeTo).generic_string()},
          {"class1", a.gtClass1},
          {"class2", a.gtClass2},
          {"regions1", a.gtRegions1.regions},
          {"regions2", a.gtRegions2.regions},
          {"keypoints1", a.keypoints1},
          {"keypoints2", a.keypoints2},
          {"keypoint_labels", a.keypointLabels1},
          {"keypoint_labels_2", a.keypointLabels2},
          {"face_labels1", a.gtFaceLabels1},
          {"face_labels2", a.gtFaceLabels2},
          {"mapping", mapping}};
}

}  // namespace zsc
