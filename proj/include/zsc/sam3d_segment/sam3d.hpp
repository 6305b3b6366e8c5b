#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "zsc/common/parallel.hpp"
#include "zsc/mesh_core/mesh.hpp"
#include "zsc/oracle/backend.hpp"
#include "zsc/region_semantics/regions.hpp"
#include "zsc/view_render/camera.hpp"
#include "zsc/view_render/raster.hpp"

namespace zsc {

inline constexpr int kUnlabeled = -1;

/// X: |F| x |R| accumulated votes, columns in `regionOrder`.
struct FaceScoreMatrix {
  Eigen::MatrixXd scores;
  std::vector<std::string> regionOrder;

  FaceScoreMatrix() = default;
  FaceScoreMatrix(std::size_t faces, std::vector<std::string> regions);
};

using FaceLabels = std::vector<int>;    // region index or kUnlabeled, per face
using VertexLabels = std::vector<int>;  // region index or kUnlabeled, per vertex

/// Votes cast by one view: (face, region, amount), sorted by (face, region).
using ViewVotes = std::vector<std::tuple<std::int32_t, int, double>>;

/// Each on mask pixel over a face adds the detection score (or 1 when
/// `weightByScore` is false) to that face's entry for the mask's region.
ViewVotes view_votes(const RenderedView& view, const std::vector<MaskImage>& masks,
                     const std::vector<std::string>& regionOrder, bool weightByScore = true);
void add_votes(FaceScoreMatrix& x, const ViewVotes& votes);
/// add_votes(x, view_votes(...)). Mask size mismatch: Error{Protocol};
/// a label outside the region order: Error{Validation}.
void accumulate_view(FaceScoreMatrix& x, const RenderedView& view, const std::vector<MaskImage>& masks,
                     bool weightByScore = true);

/// Row argmax; an all-zero row is kUnlabeled, ties go to the lower index.
FaceLabels assign_face_labels(const FaceScoreMatrix& x);
/// Majority over labeled incident faces, ties to the lower index;
/// vertices without a labeled face are kUnlabeled.
VertexLabels faces_to_vertices(const FaceLabels& faceLabels, const Mesh& mesh);

struct SegmentOptions {
  int views = 180;
  std::vector<double> radii = {2.0, 1.75, 1.5};
  int imageSize = kDefaultImageSize;
  double boxThreshold = kDefaultBoxThreshold;
  bool weightByScore = true;
  unsigned threads = default_thread_count();
  /// Order in which views are rendered and queried; empty = natural order.
  /// Votes are always merged in view-index order.
  std::vector<int> processingOrder;
};

struct Segmentation {
  FaceScoreMatrix scores;
  FaceLabels faceLabels;
  VertexLabels vertexLabels;
};

/// Renders segmentation_viewpoints, runs detect then segment per view and
/// folds the votes into X before labelling faces and vertices.
Segmentation segment(const Mesh& mesh, const RegionSet& regions, OracleGateway& oracle,
                     const SegmentOptions& options = {});

struct MatchedRegionPair {
  int source = 0, target = 0;  // indices into R1 and R2
  std::vector<int> sourceFaces, targetFaces;
};

struct CoarseCorrespondence {
  std::vector<MatchedRegionPair> matchedPairs;  // mapping order
  std::vector<int> unmatchedSource, unmatchedTarget;
};

/// Face sets per mapping pair; labeled faces whose region appears in no
/// pair go to the unmatched sets. UNLABELED faces appear nowhere.
CoarseCorrespondence coarse_correspondence(const FaceLabels& labels1, const FaceLabels& labels2,
                                           const SemanticMapping& mapping, const RegionSet& regions1,
                                           const RegionSet& regions2);

nlohmann::json segmentation_json(const Segmentation& s);
nlohmann::json correspondence_json(const CoarseCorrespondence& c);

/// Stable region palette; kUnlabeled is black.
Eigen::Vector3d region_color(int region);

}  // namespace zsc
