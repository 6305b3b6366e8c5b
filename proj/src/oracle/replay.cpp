#include "zsc/oracle/replay.hpp"

#include "zsc/common/error.hpp"
#include "zsc/oracle/canonical.hpp"

namespace zsc {

using nlohmann::json;

ReplayOracle::ReplayOracle(std::shared_ptr<FixtureStore> store) : store_(std::move(store)) {}

json ReplayOracle::fetch(const std::string& endpoint, const json& request) const {
  const std::string hash = wire::request_hash(endpoint, request);
  auto response = store_->lookup(endpoint, hash);
  if (!response)
    fail(ErrorKind::FixtureMiss, "no fixture for " + endpoint + " request " + hash + " in " +
                                     store_->dir().string());
  return *response;
}

std::string ReplayOracle::caption(const ImageRef& image, const std::string& prompt) {
  return wire::parse_text_response(fetch(wire::kCaption, wire::caption_request(image.rgb, prompt, false)));
}

std::string ReplayOracle::chat(const ChatRequest& request) {
  return wire::parse_text_response(fetch(wire::kChat, wire::chat_request(request.messages)));
}

std::vector<Detection> ReplayOracle::detect(const ImageRef& image,
                                            const std::vector<std::string>& labels,
                                            double boxThreshold) {
  return wire::parse_detect_response(
      fetch(wire::kDetect, wire::detect_request(image.rgb, labels, boxThreshold, false)));
}

std::vector<MaskImage> ReplayOracle::segment(const ImageRef& image,
                                             const std::vector<Detection>& detections) {
  const auto masks = wire::parse_segment_response(
      fetch(wire::kSegment, wire::segment_request(image.rgb, detections, false)));
  std::vector<MaskImage> out;
  for (std::size_t i = 0; i < masks.size(); ++i)
    out.push_back({masks[i], i < detections.size() ? detections[i] : Detection{}});
  return out;
}

RecordingOracle::RecordingOracle(std::shared_ptr<OracleBackend> inner,
                                 std::shared_ptr<FixtureStore> store)
    : inner_(std::move(inner)), store_(std::move(store)) {}

void RecordingOracle::save(const std::string& endpoint, const json& request, const json& response) {
  store_->store(endpoint, wire::request_hash(endpoint, request), request, response);
}

std::string RecordingOracle::caption(const ImageRef& image, const std::string& prompt) {
  std::string text = inner_->caption(image, prompt);
  save(wire::kCaption, wire::caption_request(image.rgb, prompt, true), {{"text", text}});
  return text;
}

std::string RecordingOracle::chat(const ChatRequest& request) {
  std::string text = inner_->chat(request);
  save(wire::kChat, wire::chat_request(request.messages), {{"text", text}});
  return text;
}

std::vector<Detection> RecordingOracle::detect(const ImageRef& image,
                                               const std::vector<std::string>& labels,
                                               double boxThreshold) {
  auto detections = inner_->detect(image, labels, boxThreshold);
  save(wire::kDetect, wire::detect_request(image.rgb, labels, boxThreshold, true),
       wire::detect_response(detections));
  return detections;
}

std::vector<MaskImage> RecordingOracle::segment(const ImageRef& image,
                                                const std::vector<Detection>& detections) {
  auto masks = inner_->segment(image, detections);
  save(wire::kSegment, wire::segment_request(image.rgb, detections, true),
       wire::segment_response(masks));
  return masks;
}

}  // namespace zsc
