#include "zsc/oracle/http.hpp"

#include <httplib.h>
#include <spdlog/spdlog.h>

#include <thread>

#include "zsc/common/error.hpp"
#include "zsc/oracle/canonical.hpp"

namespace zsc {

using nlohmann::json;

namespace {

class SlotGuard {
 public:
  explicit SlotGuard(std::counting_semaphore<1024>& sem) : sem_(sem) { sem_.acquire(); }
  ~SlotGuard() { sem_.release(); }
  SlotGuard(const SlotGuard&) = delete;
  SlotGuard& operator=(const SlotGuard&) = delete;

 private:
  std::counting_semaphore<1024>& sem_;
};

template <typename Duration>
void set_timeouts(httplib::Client& client, Duration timeout) {
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());
}

}  // namespace

HttpOracle::HttpOracle(HttpOptions options)
    : options_(std::move(options)), inFlight_(std::clamp(options_.maxInFlight, 1, 1024)) {}

HttpOracle::~HttpOracle() = default;

json HttpOracle::post(const std::string& endpoint, json body) const {
  const std::string requestId = wire::request_hash(endpoint, body);
  body["request_id"] = requestId;
  const std::string payload = body.dump();
  const std::string path = "/v1/" + endpoint;

  ErrorKind lastKind = ErrorKind::BackendUnavailable;
  std::string lastDetail;
  auto delay = options_.backoff;
  for (int attempt = 0; attempt <= options_.retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(delay);
      delay *= 2;
    }
    httplib::Result res;
    {
      SlotGuard slot(inFlight_);
      httplib::Client client(options_.baseUrl);
      set_timeouts(client, options_.timeout);
      res = client.Post(path, payload, "application/json");
    }
    if (!res) {
      const auto err = res.error();
      lastKind = (err == httplib::Error::Read || err == httplib::Error::ConnectionTimeout)
                     ? ErrorKind::Timeout
                     : ErrorKind::BackendUnavailable;
      lastDetail = httplib::to_string(err);
      spdlog::debug("{} attempt {} failed: {}", path, attempt + 1, lastDetail);
      continue;
    }
    const int status = res->status;
    if (status == 200) {
      json response;
      try {
        response = json::parse(res->body);
      } catch (const json::parse_error& e) {
        fail(ErrorKind::Protocol, path + " returned invalid JSON: " + e.what());
      }
      if (response.contains("request_id") && response["request_id"] != requestId)
        fail(ErrorKind::Protocol, path + " echoed a different request id");
      return response;
    }
    lastDetail = "HTTP " + std::to_string(status) + ": " + res->body;
    if (status == 504 || status == 408) {
      lastKind = ErrorKind::Timeout;
      continue;
    }
    if (status >= 500 || status == 429) {
      lastKind = ErrorKind::BackendUnavailable;
      continue;
    }
    fail(ErrorKind::Protocol, path + " rejected the request: " + lastDetail);
  }
  fail(lastKind, path + " failed after " + std::to_string(options_.retries + 1) +
                     " attempts: " + lastDetail);
}

SidecarHealth HttpOracle::health() const {
  SidecarHealth h;
  httplib::Client client(options_.baseUrl);
  set_timeouts(client, std::min<std::chrono::milliseconds>(options_.timeout, std::chrono::seconds(5)));
  auto res = client.Get("/v1/health");
  if (!res) {
    h.detail = "GET " + options_.baseUrl + "/v1/health: " + httplib::to_string(res.error());
    return h;
  }
  if (res->status != 200) {
    h.detail = "GET /v1/health returned HTTP " + std::to_string(res->status);
    return h;
  }
  try {
    const json body = json::parse(res->body);
    h.reachable = true;
    h.capabilities = body.value("capabilities", json::object());
    h.detail = body.value("status", std::string("ok"));
  } catch (const json::parse_error& e) {
    h.detail = std::string("health response is not JSON: ") + e.what();
  }
  return h;
}

std::string HttpOracle::caption(const ImageRef& image, const std::string& prompt) {
  return wire::parse_text_response(post(wire::kCaption, wire::caption_request(image.rgb, prompt, true)));
}

std::string HttpOracle::chat(const ChatRequest& request) {
  return wire::parse_text_response(post(wire::kChat, wire::chat_request(request.messages)));
}

std::vector<Detection> HttpOracle::detect(const ImageRef& image,
                                          const std::vector<std::string>& labels,
                                          double boxThreshold) {
  return wire::parse_detect_response(
      post(wire::kDetect, wire::detect_request(image.rgb, labels, boxThreshold, true)));
}

std::vector<MaskImage> HttpOracle::segment(const ImageRef& image,
                                           const std::vector<Detection>& detections) {
  const auto masks = wire::parse_segment_response(
      post(wire::kSegment, wire::segment_request(image.rgb, detections, true)));
  std::vector<MaskImage> out;
  for (std::size_t i = 0; i < masks.size(); ++i)
    out.push_back({masks[i], i < detections.size() ? detections[i] : Detection{}});
  return out;
}

}  // namespace zsc
