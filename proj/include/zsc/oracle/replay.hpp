#pragma once

#include <memory>

#include "zsc/oracle/backend.hpp"
#include "zsc/oracle/fixture_store.hpp"

namespace zsc {

/// Answers from recorded fixtures. A request with no record raises
/// Error{FixtureMiss}; there is no fallback and no retry.
class ReplayOracle final : public OracleBackend {
 public:
  explicit ReplayOracle(std::shared_ptr<FixtureStore> store);

  std::string caption(const ImageRef& image, const std::string& prompt) override;
  std::string chat(const ChatRequest& request) override;
  std::vector<Detection> detect(const ImageRef& image, const std::vector<std::string>& labels,
                                double boxThreshold) override;
  std::vector<MaskImage> segment(const ImageRef& image,
                                 const std::vector<Detection>& detections) override;
  std::string name() const override { return "replay"; }

 private:
  nlohmann::json fetch(const std::string& endpoint, const nlohmann::json& request) const;

  std::shared_ptr<FixtureStore> store_;
};

/// Forwards to an inner backend and persists every exchange.
class RecordingOracle final : public OracleBackend {
 public:
  RecordingOracle(std::shared_ptr<OracleBackend> inner, std::shared_ptr<FixtureStore> store);

  std::string caption(const ImageRef& image, const std::string& prompt) override;
  std::string chat(const ChatRequest& request) override;
  std::vector<Detection> detect(const ImageRef& image, const std::vector<std::string>& labels,
                                double boxThreshold) override;
  std::vector<MaskImage> segment(const ImageRef& image,
                                 const std::vector<Detection>& detections) override;
  std::string name() const override { return "record(" + inner_->name() + ")"; }

 private:
  void save(const std::string& endpoint, const nlohmann::json& request,
            const nlohmann::json& response);

  std::shared_ptr<OracleBackend> inner_;
  std::shared_ptr<FixtureStore> store_;
};

}  // namespace zsc
