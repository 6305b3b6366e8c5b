#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "zsc/fmap_dense/fmap.hpp"
#include "zsc/mesh_core/mesh.hpp"
#include "zsc/oracle/synthetic.hpp"
#include "zsc/region_semantics/regions.hpp"
#include "zsc/sam3d_segment/sam3d.hpp"

namespace zsc {

inline constexpr int kKeypointCount = 34;

/// canonical term -> accepted synonyms (lowercase, canonical included).
class SynonymTable {
 public:
  SynonymTable() = default;
  explicit SynonymTable(std::map<std::string, std::set<std::string>> entries);
  /// {"term": ["syn", ...], ...}
  static SynonymTable from_json(const nlohmann::json& j);
  /// Tables shipped in the synonym asset: "classes" or "regions".
  static SynonymTable builtin(const std::string& section);

  bool contains(const std::string& canonical) const;
  const std::set<std::string>& synonyms(const std::string& canonical) const;  // Error{Input} if absent
  /// Normalized p == g, or both belong to one synonym set.
  bool matches(const std::string& predicted, const std::string& truth) const;
  const std::map<std::string, std::set<std::string>>& entries() const { return entries_; }

 private:
  std::map<std::string, std::set<std::string>> entries_;
  std::map<std::string, std::set<std::string>> groups_;  // term -> canonical terms listing it
};

/// Fraction of predictions whose normalized form is a synonym of the GT
/// class. A GT class absent from the table is Error{Input}.
double zs_class_acc(const std::vector<std::string>& predictions, const std::vector<std::string>& truths,
                    const SynonymTable& synonyms);

struct F1Score {
  int tp = 0, fp = 0, fn = 0;
  double f1 = 0.0;
};
F1Score f1_from_counts(int tp, int fp, int fn);

/// Synonym-aware greedy matching (exact matches first, then synonyms, each
/// GT item used once), F1 = 2TP / (2TP + FP + FN).
F1Score srgen_f1(const std::vector<std::string>& predicted, const std::vector<std::string>& truth,
                 const SynonymTable& synonyms);
/// Pairs match when both ends match.
F1Score srgen_f1(const SemanticMapping& predicted, const SemanticMapping& truth, const SynonymTable& synonyms);

struct PairAnnotation {
  std::string id;
  std::filesystem::path shape1Path, shape2Path;
  std::string gtClass1, gtClass2;
  std::vector<int> keypoints1, keypoints2;
  std::vector<std::string> keypointLabels1, keypointLabels2;
  std::vector<std::string> gtFaceLabels1, gtFaceLabels2;  // "" = not annotated
  RegionSet gtRegions1, gtRegions2;
  SemanticMapping gtMapping;
};

/// Predicted labels of one shape: indices into `regions`.
struct ShapePrediction {
  const RegionSet& regions;
  const FaceLabels& faceLabels;
};

/// Mean IoU of face sets over the GT regions, plus predicted regions that
/// match no GT region (IoU 0). Regions empty in both are skipped. With
/// `faceAreas`, sets are measured by area instead of face count.
double shape_iou(const ShapePrediction& predicted, const std::vector<std::string>& gtFaceLabels,
                 const RegionSet& gtRegions, const SynonymTable& synonyms,
                 const std::vector<double>* faceAreas = nullptr);

struct SrIou {
  double i1 = 0, i2 = 0, i12 = 0;
};
SrIou sriou(const ShapePrediction& shape1, const ShapePrediction& shape2, const PairAnnotation& annotation,
            const SynonymTable& synonyms, const std::vector<double>* areas1 = nullptr,
            const std::vector<double>* areas2 = nullptr);

/// Keypoint j counts when the predicted vertex label on shape 1 matches the
/// GT keypoint label, the one on shape 2 matches the GT label on shape 2,
/// and the predicted pair is in `mapping`. UNLABELED fails.
double kp_label_acc(const RegionSet& regions1, const VertexLabels& labels1, const RegionSet& regions2,
                    const VertexLabels& labels2, const SemanticMapping& mapping,
                    const PairAnnotation& annotation, const SynonymTable& synonyms);

/// Mean over keypoints of d1(map[P2_j], P1_j) / sqrt(area1), graph
/// geodesics on mesh1. Unreachable targets are capped at the largest
/// finite distance from the source (warned).
double avg_geodesic_error(const PointMap& map, const PairAnnotation& annotation, const Mesh& mesh1);

/// GT vertex labels: majority of incident annotated faces, ties to the
/// first label in `regions`.
std::vector<std::string> gt_vertex_labels(const Mesh& mesh, const std::vector<std::string>& faceLabels,
                                          const RegionSet& regions);

/// Reads a dataset manifest; paths resolve against its directory. Each pair
/// is validated against its meshes; violations raise Error{Schema} naming
/// the pair and field.
std::vector<PairAnnotation> load_dataset(const std::filesystem::path& manifest);
/// Ground truth for the synthetic oracle, keyed by mesh file stem. A stem
/// annotated inconsistently across pairs is Error{Schema}.
SyntheticKnowledge synthetic_knowledge(const std::vector<PairAnnotation>& pairs);

nlohmann::json annotation_json(const PairAnnotation& a, const std::filesystem::path& relativeTo);

}  // namespace zsc
