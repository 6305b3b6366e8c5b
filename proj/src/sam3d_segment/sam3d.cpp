#include "zsc/sam3d_segment/sam3d.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "zsc/common/error.hpp"
#include "zsc/common/text.hpp"

namespace zsc {

using nlohmann::json;

FaceScoreMatrix::FaceScoreMatrix(std::size_t faces, std::vector<std::string> regions)
    : scores(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(faces), static_cast<Eigen::Index>(regions.size()))),
      regionOrder(std::move(regions)) {}

ViewVotes view_votes(const RenderedView& view, const std::vector<MaskImage>& masks,
                     const std::vector<std::string>& regionOrder, bool weightByScore) {
  const FaceIndexImage& ids = view.faceIndex;
  std::map<std::pair<std::int32_t, int>, double> sums;
  std::map<std::int32_t, long> counts;
  for (std::size_t m = 0; m < masks.size(); ++m) {
    const MaskImage& mask = masks[m];
    if (mask.mask.width != ids.width || mask.mask.height != ids.height)
      fail(ErrorKind::Protocol, "mask " + std::to_string(m) + " is " + std::to_string(mask.mask.width) + "x" +
                                    std::to_string(mask.mask.height) + " but the view is " +
                                    std::to_string(ids.width) + "x" + std::to_string(ids.height));
    const std::string label = to_lower(trim(mask.detection.label));
    const auto it = std::find(regionOrder.begin(), regionOrder.end(), label);
    if (it == regionOrder.end())
      fail(ErrorKind::Validation, "mask label '" + mask.detection.label + "' is not a known region");
    const int region = static_cast<int>(it - regionOrder.begin());

    counts.clear();
    for (std::size_t p = 0; p < ids.ids.size(); ++p)
      if (mask.mask.pixels[p] != 0 && ids.ids[p] != kBackground) ++counts[ids.ids[p]];
    const double weight = weightByScore ? mask.detection.score : 1.0;
    for (const auto& [face, count] : counts) sums[{face, region}] += weight * static_cast<double>(count);
  }
  ViewVotes out;
  out.reserve(sums.size());
  for (const auto& [key, amount] : sums) out.emplace_back(key.first, key.second, amount);
  return out;
}

void add_votes(FaceScoreMatrix& x, const ViewVotes& votes) {
  for (const auto& [face, region, amount] : votes) {
    if (face < 0 || face >= x.scores.rows() || region < 0 || region >= x.scores.cols())
      fail(ErrorKind::Invariant, "vote for face " + std::to_string(face) + " region " +
                                     std::to_string(region) + " is outside X");
    x.scores(face, region) += amount;
  }
}

void accumulate_view(FaceScoreMatrix& x, const RenderedView& view, const std::vector<MaskImage>& masks,
                     bool weightByScore) {
  add_votes(x, view_votes(view, masks, x.regionOrder, weightByScore));
}

FaceLabels assign_face_labels(const FaceScoreMatrix& x) {
  FaceLabels labels(static_cast<std::size_t>(x.scores.rows()), kUnlabeled);
  for (Eigen::Index f = 0; f < x.scores.rows(); ++f) {
    double best = 0.0;
    for (Eigen::Index r = 0; r < x.scores.cols(); ++r)
      if (x.scores(f, r) > best) {
        best = x.scores(f, r);
        labels[f] = static_cast<int>(r);
      }
  }
  return labels;
}

VertexLabels faces_to_vertices(const FaceLabels& faceLabels, const Mesh& mesh) {
  if (faceLabels.size() != mesh.num_faces())
    fail(ErrorKind::Input, "face label count " + std::to_string(faceLabels.size()) + " differs from face count " +
                               std::to_string(mesh.num_faces()));
  const auto incident = vertex_faces(mesh);
  VertexLabels out(mesh.num_vertices(), kUnlabeled);
  std::map<int, int> votes;
  for (std::size_t v = 0; v < incident.size(); ++v) {
    votes.clear();
    for (int f : incident[v])
      if (faceLabels[f] != kUnlabeled) ++votes[faceLabels[f]];
    int bestCount = 0;
    for (const auto& [label, count] : votes)
      if (count > bestCount) {
        bestCount = count;
        out[v] = label;
      }
  }
  return out;
}

Segmentation segment(const Mesh& mesh, const RegionSet& regions, OracleGateway& oracle,
                     const SegmentOptions& options) {
  regions.validate();
  const auto cameras = segmentation_viewpoints(options.views, options.radii, options.imageSize);
  std::vector<int> order = options.processingOrder;
  if (order.empty()) {
    order.resize(cameras.size());
    std::iota(order.begin(), order.end(), 0);
  }
  {
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (sorted.size() != cameras.size() || sorted[i] != static_cast<int>(i))
        fail(ErrorKind::Input, "processing order must be a permutation of the " +
                                   std::to_string(cameras.size()) + " view indices");
  }

  std::vector<ViewVotes> votes(cameras.size());
  parallel_for(order.size(), options.threads, [&](std::size_t slot) {
    const int v = order[slot];
    try {
      const RenderedView view = render(mesh, cameras[v]);
      const ImageRef image = image_ref(view, mesh.id);
      const auto detections = oracle.detect(image, regions.regions, options.boxThreshold);
      const auto masks = oracle.segment(image, detections);
      votes[v] = view_votes(view, masks, regions.regions, options.weightByScore);
    } catch (const Error& e) {
      fail(e.kind(), "segmentation view " + std::to_string(v) + ": " + e.what());
    }
  });

  Segmentation out;
  out.scores = FaceScoreMatrix(mesh.num_faces(), regions.regions);
  for (const auto& partial : votes) add_votes(out.scores, partial);
  out.faceLabels = assign_face_labels(out.scores);
  out.vertexLabels = faces_to_vertices(out.faceLabels, mesh);
  return out;
}

CoarseCorrespondence coarse_correspondence(const FaceLabels& labels1, const FaceLabels& labels2,
                                           const SemanticMapping& mapping, const RegionSet& regions1,
                                           const RegionSet& regions2) {
  mapping.validate(regions1, regions2);
  auto faces_with = [](const FaceLabels& labels, int region) {
    std::vector<int> out;
    for (std::size_t f = 0; f < labels.size(); ++f)
      if (labels[f] == region) out.push_back(static_cast<int>(f));
    return out;
  };
  auto check = [](const FaceLabels& labels, const RegionSet& regions, const char* which) {
    for (int l : labels)
      if (l != kUnlabeled && (l < 0 || l >= static_cast<int>(regions.size())))
        fail(ErrorKind::Input, std::string(which) + " face label " + std::to_string(l) + " is outside its region set");
  };
  check(labels1, regions1, "source");
  check(labels2, regions2, "target");

  CoarseCorrespondence out;
  std::vector<bool> used1(regions1.size(), false), used2(regions2.size(), false);
  for (const auto& [s, t] : mapping.pairs) {
    MatchedRegionPair p;
    p.source = regions1.index_of(s);
    p.target = regions2.index_of(t);
    p.sourceFaces = faces_with(labels1, p.source);
    p.targetFaces = faces_with(labels2, p.target);
    used1[p.source] = used2[p.target] = true;
    out.matchedPairs.push_back(std::move(p));
  }
  for (std::size_t f = 0; f < labels1.size(); ++f)
    if (labels1[f] != kUnlabeled && !used1[labels1[f]]) out.unmatchedSource.push_back(static_cast<int>(f));
  for (std::size_t f = 0; f < labels2.size(); ++f)
    if (labels2[f] != kUnlabeled && !used2[labels2[f]]) out.unmatchedTarget.push_back(static_cast<int>(f));
  return out;
}

json segmentation_json(const Segmentation& s) {
  return {{"regionOrder", s.scores.regionOrder}, {"faceLabels", s.faceLabels}, {"vertexLabels", s.vertexLabels}};
}

json correspondence_json(const CoarseCorrespondence& c) {
  json pairs = json::array();
  for (const auto& p : c.matchedPairs)
    pairs.push_back({{"source", p.source}, {"target", p.target}, {"sourceFaces", p.sourceFaces},
                     {"targetFaces", p.targetFaces}});
  return {{"matchedPairs", pairs}, {"unmatchedSource", c.unmatchedSource}, {"unmatchedTarget", c.unmatchedTarget}};
}

Eigen::Vector3d region_color(int region) {
  static const double palette[][3] = {
      {0.894, 0.102, 0.110}, {0.216, 0.494, 0.722}, {0.302, 0.686, 0.290}, {0.596, 0.306, 0.639},
      {1.000, 0.498, 0.000}, {1.000, 1.000, 0.200}, {0.651, 0.337, 0.157}, {0.969, 0.506, 0.749},
      {0.400, 0.761, 0.647}, {0.553, 0.627, 0.796}, {0.651, 0.847, 0.329}, {0.906, 0.541, 0.765}};
  if (region < 0) return Eigen::Vector3d::Zero();
  const auto& c = palette[region % 12];
  return {c[0], c[1], c[2]};
}

}  // namespace zsc
