#include "zsc/common/error.hpp"
#include "zsc/common/text.hpp"
#include "zsc/oracle/backend.hpp"

namespace zsc {
namespace {

std::string checked_text(std::string text, const char* what) {
  if (trim(text).empty()) fail(ErrorKind::EmptyResponse, std::string(what) + " returned empty text");
  return text;
}

}  // namespace

OracleGateway::OracleGateway(std::shared_ptr<OracleBackend> backend) : backend_(std::move(backend)) {
  if (!backend_) fail(ErrorKind::Invariant, "oracle gateway needs a backend");
}

bool OracleGateway::concurrent() const { return backend_->name() != "http"; }

std::string OracleGateway::caption(const ImageRef& image, const std::string& prompt) {
  if (image.rgb.empty()) fail(ErrorKind::Input, "caption needs a non-empty image");
  return checked_text(backend_->caption(image, prompt), "caption");
}

std::string OracleGateway::chat(const ChatRequest& request) {
  if (request.messages.empty()) fail(ErrorKind::Input, "chat needs at least one message");
  for (const auto& m : request.messages)
    if (m.role != "system" && m.role != "user" && m.role != "assistant")
      fail(ErrorKind::Input, "chat role must be system, user or assistant, got '" + m.role + "'");
  return checked_text(backend_->chat(request), "chat");
}

std::vector<Detection> OracleGateway::detect(const ImageRef& image,
                                             const std::vector<std::string>& labels,
                                             double boxThreshold) {
  if (labels.empty()) fail(ErrorKind::Input, "detect needs at least one label");
  auto detections = backend_->detect(image, labels, boxThreshold);
  for (const auto& d : detections) d.validate();
  return detections;
}

std::vector<MaskImage> OracleGateway::segment(const ImageRef& image,
                                              const std::vector<Detection>& detections) {
  for (const auto& d : detections) d.validate();
  if (detections.empty()) return {};
  auto masks = backend_->segment(image, detections);
  if (masks.size() != detections.size())
    fail(ErrorKind::Protocol, "segment returned " + std::to_string(masks.size()) +
                                  " masks for " + std::to_string(detections.size()) + " boxes");
  for (std::size_t i = 0; i < masks.size(); ++i) {
    GrayImage& m = masks[i].mask;
    if (m.width != image.rgb.width || m.height != image.rgb.height)
      fail(ErrorKind::Protocol, "mask " + std::to_string(i) + " is " + std::to_string(m.width) +
                                    "x" + std::to_string(m.height) + ", image is " +
                                    std::to_string(image.rgb.width) + "x" +
                                    std::to_string(image.rgb.height));
    masks[i].detection = detections[i];
    const PixelRect r = box_pixels(detections[i], m.width, m.height, 2);
    for (int y = 0; y < m.height; ++y)
      for (int x = 0; x < m.width; ++x) {
        auto& px = m.at(x, y);
        const bool inside = x >= r.x0 && x <= r.x1 && y >= r.y0 && y <= r.y1;
        px = (inside && px != 0) ? 1 : 0;
      }
  }
  return masks;
}

}  // namespace zsc
