#include "zsc/oracle/synthetic.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <limits>
#include <random>

#include "zsc/common/error.hpp"
#include "zsc/common/hash.hpp"
#include "zsc/common/text.hpp"
#include "zsc/oracle/canonical.hpp"

namespace zsc {
namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::string majority(const std::vector<std::string>& texts) {
  std::map<std::string, int> counts;
  for (const auto& t : texts) {
    const std::string n = normalize_label(t);
    if (!n.empty()) ++counts[n];
  }
  std::string best;
  int bestCount = 0;
  for (const auto& [label, count] : counts)  // map order = lexicographic tie-break
    if (count > bestCount) {
      best = label;
      bestCount = count;
    }
  return best;
}

}  // namespace

SyntheticOracle::SyntheticOracle(SyntheticKnowledge knowledge, SyntheticNoise noise)
    : knowledge_(std::move(knowledge)), noise_(noise) {}

bool SyntheticOracle::noiseless() const {
  return noise_.boxJitter == 0.0 && noise_.maskDropout == 0.0 && noise_.minConfidence >= 1.0;
}

const SyntheticKnowledge::Shape& SyntheticOracle::shape(const ImageRef& image) const {
  auto it = knowledge_.shapes.find(image.shapeId);
  if (it == knowledge_.shapes.end())
    fail(ErrorKind::Input, "synthetic oracle has no ground truth for shape '" + image.shapeId + "'");
  return it->second;
}

std::string SyntheticOracle::caption(const ImageRef& image, const std::string&) {
  return shape(image).className;
}

std::string SyntheticOracle::chat(const ChatRequest& request) {
  using Kind = ChatIntent::Kind;
  const ChatIntent& intent = request.intent;
  if (intent.kind == Kind::UnifyClasses) return majority(intent.proposals);
  if (intent.kind == Kind::RegionMapping) {
    auto regions = [&](const std::string& cls) {
      auto it = knowledge_.classRegions.find(cls);
      if (it == knowledge_.classRegions.end())
        fail(ErrorKind::Input, "synthetic oracle has no regions for class '" + cls + "'");
      return it->second;
    };
    nlohmann::json out;
    out["regions_1"] = regions(intent.class1);
    out["regions_2"] = regions(intent.class2);
    nlohmann::json pairs = nlohmann::json::array();
    auto it = knowledge_.mappings.find({intent.class1, intent.class2});
    if (it != knowledge_.mappings.end()) {
      for (const auto& [s, t] : it->second) pairs.push_back({s, t});
    } else if (intent.class1 == intent.class2) {
      for (const auto& r : regions(intent.class1)) pairs.push_back({r, r});
    } else {
      fail(ErrorKind::Input, "synthetic oracle has no mapping for '" + intent.class1 + "' -> '" +
                                 intent.class2 + "'");
    }
    out["mapping"] = pairs;
    return out.dump();
  }
  fail(ErrorKind::Input, "synthetic oracle cannot answer a free-form chat request");
}

std::vector<Detection> SyntheticOracle::detect(const ImageRef& image,
                                               const std::vector<std::string>& labels, double) {
  if (!image.faceIndex) fail(ErrorKind::Invariant, "synthetic detect needs the face-index buffer");
  const auto& truth = shape(image);
  const FaceIndexImage& ids = *image.faceIndex;
  const int w = ids.width, h = ids.height;

  std::mt19937_64 rng(fnv1a64(wire::image_hash(image.rgb), noise_.seed ^ 0x9e3779b97f4a7c15ULL));
  std::vector<Detection> out;
  for (const auto& requested : labels) {
    const std::string label = to_lower(trim(requested));
    int minX = std::numeric_limits<int>::max(), minY = minX, maxX = -1, maxY = -1;
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        const auto f = ids.at(x, y);
        if (f == kBackground || static_cast<std::size_t>(f) >= truth.faceRegions.size()) continue;
        if (truth.faceRegions[f] != label) continue;
        minX = std::min(minX, x);
        maxX = std::max(maxX, x);
        minY = std::min(minY, y);
        maxY = std::max(maxY, y);
      }
    if (maxX < 0) continue;
    Detection d;
    d.label = requested;
    d.box = {static_cast<double>(minX) / w, static_cast<double>(minY) / h,
             static_cast<double>(maxX + 1) / w, static_cast<double>(maxY + 1) / h};
    if (!noiseless()) {
      for (double& c : d.box) c = std::clamp(c + noise_.boxJitter * (2.0 * unit(rng) - 1.0), 0.0, 1.0);
      if (d.box[0] > d.box[2]) std::swap(d.box[0], d.box[2]);
      if (d.box[1] > d.box[3]) std::swap(d.box[1], d.box[3]);
      if (!(d.box[0] < d.box[2]) || !(d.box[1] < d.box[3])) continue;
      d.score = noise_.minConfidence + (1.0 - noise_.minConfidence) * unit(rng);
    }
    out.push_back(d);
  }
  return out;
}

std::vector<MaskImage> SyntheticOracle::segment(const ImageRef& image,
                                                const std::vector<Detection>& detections) {
  if (!image.faceIndex) fail(ErrorKind::Invariant, "synthetic segment needs the face-index buffer");
  const auto& truth = shape(image);
  const FaceIndexImage& ids = *image.faceIndex;
  std::mt19937_64 rng(fnv1a64(wire::image_hash(image.rgb), noise_.seed ^ 0xa5a5a5a5a5a5a5a5ULL));
  std::vector<MaskImage> out;
  for (const auto& d : detections) {
    const std::string label = to_lower(trim(d.label));
    MaskImage m{GrayImage(ids.width, ids.height), d};
    const PixelRect r = box_pixels(d, ids.width, ids.height);
    for (int y = r.y0; y <= r.y1; ++y)
      for (int x = r.x0; x <= r.x1; ++x) {
        const auto f = ids.at(x, y);
        if (f == kBackground || static_cast<std::size_t>(f) >= truth.faceRegions.size()) continue;
        if (truth.faceRegions[f] != label) continue;
        if (noise_.maskDropout > 0.0 && unit(rng) < noise_.maskDropout) continue;
        m.mask.at(x, y) = 1;
      }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace zsc
