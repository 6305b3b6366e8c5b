#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "zsc/oracle/types.hpp"

namespace zsc::wire {

using nlohmann::json;

inline constexpr const char* kCaption = "caption";
inline constexpr const char* kChat = "chat";
inline constexpr const char* kDetect = "detect";
inline constexpr const char* kSegment = "segment";

/// Content hash of raw pixels and dimensions.
std::string image_hash(const RgbImage& image);

/// {"sha256", "width", "height"} plus "png" (base64) when `inlinePng`.
json image_json(const RgbImage& image, bool inlinePng);

json caption_request(const RgbImage& image, const std::string& prompt, bool inlinePng);
json chat_request(const std::vector<ChatMessage>& messages);
json detect_request(const RgbImage& image, const std::vector<std::string>& labels,
                    double boxThreshold, bool inlinePng);
json segment_request(const RgbImage& image, const std::vector<Detection>& detections,
                     bool inlinePng);

/// Drops inline image payloads so only content hashes remain.
json strip_payloads(json request);

/// sha256 over the endpoint and the sorted-key dump of the payload-free
/// request.
std::string request_hash(const std::string& endpoint, const json& request);

json detection_json(const Detection& d);
Detection parse_detection(const json& j);

std::string parse_text_response(const json& response);
std::vector<Detection> parse_detect_response(const json& response);
json detect_response(const std::vector<Detection>& detections);
std::vector<GrayImage> parse_segment_response(const json& response);
json segment_response(const std::vector<MaskImage>& masks);

}  // namespace zsc::wire
