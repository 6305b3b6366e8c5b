#pragma once

#include <array>
#include <string>
#include <vector>

#include "zsc/view_render/image.hpp"
#include "zsc/view_render/raster.hpp"

namespace zsc {

inline constexpr double kDefaultBoxThreshold = 3.7;

/// Box corners are normalized image coordinates: x0 < x1, y0 < y1, all in [0,1].
struct Detection {
  std::string label;
  std::array<double, 4> box{0.0, 0.0, 1.0, 1.0};  // x0, y0, x1, y1
  double score = 1.0;

  /// Throws Error{Protocol} when an invariant is violated.
  void validate() const;
  bool operator==(const Detection&) const = default;
};

/// Pixel bounds [x0, x1] x [y0, y1] (inclusive) covered by a normalized box
/// on a width x height raster, grown by `dilation` and clamped to the image.
struct PixelRect {
  int x0, y0, x1, y1;
};
PixelRect box_pixels(const Detection& d, int width, int height, int dilation = 0);

struct MaskImage {
  GrayImage mask;  // 0/1, same size as the query image
  Detection detection;
};

struct ChatMessage {
  std::string role;  // system | user | assistant
  std::string content;
  bool operator==(const ChatMessage&) const = default;
};

/// Structured description of what a chat prompt asks for. Live and replay
/// backends see only the messages; the synthetic oracle answers from this.
struct ChatIntent {
  enum class Kind { None, UnifyClasses, RegionMapping };
  Kind kind = Kind::None;
  std::vector<std::string> proposals;  // UnifyClasses
  std::string class1, class2;          // RegionMapping
};

struct ChatRequest {
  std::vector<ChatMessage> messages;
  ChatIntent intent;
};

/// Image handed to an oracle. `faceIndex` and `shapeId` are ground-truth
/// side channels used by the synthetic oracle only; they never reach the
/// wire or the fixture keys.
struct ImageRef {
  const RgbImage& rgb;
  const FaceIndexImage* faceIndex = nullptr;
  std::string shapeId;
};

inline ImageRef image_ref(const RenderedView& view, std::string shapeId) {
  return ImageRef{view.rgb, &view.faceIndex, std::move(shapeId)};
}

}  // namespace zsc
