#pragma once

#include <deque>
#include <mutex>
#include <string>
#include <vector>

#include "zsc/common/error.hpp"
#include "zsc/oracle/backend.hpp"

namespace zsc::testing {

// Canned answers in call order; records what it was asked.
class ScriptedBackend final : public OracleBackend {
 public:
  std::deque<std::string> captions, replies;
  std::vector<ChatRequest> chats;
  int captionCalls = 0;

  std::string caption(const ImageRef&, const std::string&) override {
    std::lock_guard lock(mutex_);
    ++captionCalls;
    if (captions.empty()) fail(ErrorKind::Invariant, "script has no caption left");
    std::string c = captions.front();
    captions.pop_front();
    return c;
  }
  std::string chat(const ChatRequest& request) override {
    std::lock_guard lock(mutex_);
    chats.push_back(request);
    if (replies.empty()) fail(ErrorKind::Invariant, "script has no reply left");
    std::string r = replies.front();
    replies.pop_front();
    return r;
  }
  std::vector<Detection> detect(const ImageRef&, const std::vector<std::string>&, double) override { return {}; }
  std::vector<MaskImage> segment(const ImageRef&, const std::vector<Detection>&) override { return {}; }
  std::string name() const override { return "scripted"; }

 private:
  std::mutex mutex_;
};

}  // namespace zsc::testing
