#pragma once

#include <memory>
#include <string>
#include <vector>

#include "zsc/oracle/types.hpp"

namespace zsc {

/// One implementation of the four foundation-model capabilities.
class OracleBackend {
 public:
  virtual ~OracleBackend() = default;

  virtual std::string caption(const ImageRef& image, const std::string& prompt) = 0;
  virtual std::string chat(const ChatRequest& request) = 0;
  virtual std::vector<Detection> detect(const ImageRef& image,
                                        const std::vector<std::string>& labels,
                                        double boxThreshold) = 0;
  virtual std::vector<MaskImage> segment(const ImageRef& image,
                                         const std::vector<Detection>& detections) = 0;
  virtual std::string name() const = 0;
};

/// Client facade over a backend: validates every response at the boundary
/// (non-empty text, Detection invariants, mask geometry) before returning.
/// Safe for concurrent calls when the backend is.
class OracleGateway {
 public:
  explicit OracleGateway(std::shared_ptr<OracleBackend> backend);

  std::string caption(const ImageRef& image, const std::string& prompt);
  std::string chat(const ChatRequest& request);
  std::vector<Detection> detect(const ImageRef& image, const std::vector<std::string>& labels,
                                double boxThreshold = kDefaultBoxThreshold);
  std::vector<MaskImage> segment(const ImageRef& image, const std::vector<Detection>& detections);

  OracleBackend& backend() { return *backend_; }
  /// Unbounded backends (synthetic, replay) report true.
  bool concurrent() const;

 private:
  std::shared_ptr<OracleBackend> backend_;
};

}  // namespace zsc
