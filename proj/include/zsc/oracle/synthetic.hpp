#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "zsc/oracle/backend.hpp"

namespace zsc {

/// Ground truth the synthetic oracle answers from.
struct SyntheticKnowledge {
  struct Shape {
    std::string className;
    std::vector<std::string> faceRegions;  // per face; empty string = no region
  };
  std::map<std::string, Shape> shapes;                          // by shape id
  std::map<std::string, std::vector<std::string>> classRegions;  // by class name
  /// (class1, class2) -> region pairs. Same-class pairs default to identity.
  std::map<std::pair<std::string, std::string>, std::vector<std::pair<std::string, std::string>>>
      mappings;
};

/// Optional degradations for robustness sweeps. All zero/one = noiseless.
struct SyntheticNoise {
  double boxJitter = 0.0;      // max absolute corner shift, normalized units
  double maskDropout = 0.0;    // per-pixel drop probability
  double minConfidence = 1.0;  // scores drawn uniformly from [minConfidence, 1]
  std::uint64_t seed = 0;
};

/// Ground-truth oracle: captions echo the shape class, detections are tight
/// boxes around each region's visible pixels (score 1), masks are the exact
/// region pixels inside the box.
class SyntheticOracle final : public OracleBackend {
 public:
  explicit SyntheticOracle(SyntheticKnowledge knowledge, SyntheticNoise noise = {});

  std::string caption(const ImageRef& image, const std::string& prompt) override;
  std::string chat(const ChatRequest& request) override;
  std::vector<Detection> detect(const ImageRef& image, const std::vector<std::string>& labels,
                                double boxThreshold) override;
  std::vector<MaskImage> segment(const ImageRef& image,
                                 const std::vector<Detection>& detections) override;
  std::string name() const override { return "synthetic"; }

  const SyntheticKnowledge& knowledge() const { return knowledge_; }

 private:
  const SyntheticKnowledge::Shape& shape(const ImageRef& image) const;
  bool noiseless() const;

  SyntheticKnowledge knowledge_;
  SyntheticNoise noise_;
};

}  // namespace zsc
