#pragma once

#include <nlohmann/json.hpp>

#include <chrono>
#include <memory>
#include <semaphore>
#include <string>

#include "zsc/oracle/backend.hpp"

namespace zsc {

struct HttpOptions {
  std::string baseUrl = "http://127.0.0.1:8080";
  std::chrono::milliseconds timeout{120'000};
  int retries = 3;
  std::chrono::milliseconds backoff{500};  // doubled after each failed attempt
  int maxInFlight = 8;
};

struct SidecarHealth {
  bool reachable = false;
  std::string detail;
  nlohmann::json capabilities;
};

/// Client for the model sidecar's JSON API (/v1/caption, /v1/chat,
/// /v1/detect, /v1/segment, /v1/health). Images travel as base64 PNG.
class HttpOracle final : public OracleBackend {
 public:
  explicit HttpOracle(HttpOptions options);
  ~HttpOracle() override;

  std::string caption(const ImageRef& image, const std::string& prompt) override;
  std::string chat(const ChatRequest& request) override;
  std::vector<Detection> detect(const ImageRef& image, const std::vector<std::string>& labels,
                                double boxThreshold) override;
  std::vector<MaskImage> segment(const ImageRef& image,
                                 const std::vector<Detection>& detections) override;
  std::string name() const override { return "http"; }

  SidecarHealth health() const;

 private:
  nlohmann::json post(const std::string& endpoint, nlohmann::json body) const;

  HttpOptions options_;
  mutable std::counting_semaphore<1024> inFlight_;
};

}  // namespace zsc
