#include "zsc/oracle/canonical.hpp"

#include "zsc/common/error.hpp"
#include "zsc/common/hash.hpp"

namespace zsc::wire {

std::string image_hash(const RgbImage& image) {
  std::string buf = "rgb8:" + std::to_string(image.width) + "x" + std::to_string(image.height) + ":";
  buf.append(reinterpret_cast<const char*>(image.pixels.data()), image.pixels.size());
  return sha256_hex(buf);
}

json image_json(const RgbImage& image, bool inlinePng) {
  json j = {{"sha256", image_hash(image)}, {"width", image.width}, {"height", image.height}};
  if (inlinePng) j["png"] = base64_encode(encode_png(image));
  return j;
}

json caption_request(const RgbImage& image, const std::string& prompt, bool inlinePng) {
  return {{"image", image_json(image, inlinePng)}, {"prompt", prompt}};
}

json chat_request(const std::vector<ChatMessage>& messages) {
  json list = json::array();
  for (const auto& m : messages) list.push_back({{"role", m.role}, {"content", m.content}});
  return {{"messages", list}};
}

json detect_request(const RgbImage& image, const std::vector<std::string>& labels,
                    double boxThreshold, bool inlinePng) {
  return {{"image", image_json(image, inlinePng)}, {"labels", labels}, {"box_threshold", boxThreshold}};
}

json detection_json(const Detection& d) {
  return {{"label", d.label}, {"box", d.box}, {"score", d.score}};
}

json segment_request(const RgbImage& image, const std::vector<Detection>& detections,
                     bool inlinePng) {
  json boxes = json::array();
  for (const auto& d : detections) boxes.push_back(detection_json(d));
  return {{"image", image_json(image, inlinePng)}, {"boxes", boxes}};
}

json strip_payloads(json request) {
  if (request.contains("image") && request["image"].is_object()) request["image"].erase("png");
  request.erase("request_id");
  return request;
}

std::string request_hash(const std::string& endpoint, const json& request) {
  return sha256_hex(endpoint + "\n" + strip_payloads(request).dump());
}

Detection parse_detection(const json& j) {
  try {
    Detection d;
    d.label = j.at("label").get<std::string>();
    const auto& box = j.at("box");
    if (!box.is_array() || box.size() != 4) fail(ErrorKind::Protocol, "detection box must have 4 numbers");
    for (int i = 0; i < 4; ++i) d.box[i] = box[i].get<double>();
    d.score = j.at("score").get<double>();
    return d;
  } catch (const json::exception& e) {
    fail(ErrorKind::Protocol, std::string("malformed detection: ") + e.what());
  }
}

std::string parse_text_response(const json& response) {
  if (!response.is_object() || !response.contains("text") || !response["text"].is_string())
    fail(ErrorKind::Protocol, "response lacks a string 'text' field");
  return response["text"].get<std::string>();
}

std::vector<Detection> parse_detect_response(const json& response) {
  if (!response.is_object() || !response.contains("detections") || !response["detections"].is_array())
    fail(ErrorKind::Protocol, "response lacks a 'detections' array");
  std::vector<Detection> out;
  for (const auto& d : response["detections"]) out.push_back(parse_detection(d));
  return out;
}

json detect_response(const std::vector<Detection>& detections) {
  json list = json::array();
  for (const auto& d : detections) list.push_back(detection_json(d));
  return {{"detections", list}};
}

std::vector<GrayImage> parse_segment_response(const json& response) {
  if (!response.is_object() || !response.contains("masks") || !response["masks"].is_array())
    fail(ErrorKind::Protocol, "response lacks a 'masks' array");
  std::vector<GrayImage> out;
  for (const auto& m : response["masks"]) {
    if (!m.is_string()) fail(ErrorKind::Protocol, "mask entries must be base64 PNG strings");
    std::vector<std::uint8_t> bytes;
    try {
      bytes = base64_decode(m.get<std::string>());
    } catch (const Error& e) {
      fail(ErrorKind::Protocol, std::string("mask payload: ") + e.what());
    }
    out.push_back(decode_png_gray(bytes));
  }
  return out;
}

json segment_response(const std::vector<MaskImage>& masks) {
  json list = json::array();
  for (const auto& m : masks) list.push_back(base64_encode(encode_png(m.mask)));
  return {{"masks", list}};
}

}  // namespace zsc::wire
