#include "zsc/oracle/types.hpp"

#include <algorithm>
#include <cmath>

#include "zsc/common/error.hpp"

namespace zsc {

void Detection::validate() const {
  const auto [x0, y0, x1, y1] = box;
  for (double c : box)
    if (!std::isfinite(c) || c < 0.0 || c > 1.0)
      fail(ErrorKind::Protocol, "detection '" + label + "' has a box corner outside [0,1]");
  if (!(x0 < x1) || !(y0 < y1))
    fail(ErrorKind::Protocol, "detection '" + label + "' has an empty box");
  if (!std::isfinite(score) || score < 0.0)
    fail(ErrorKind::Protocol, "detection '" + label + "' has an invalid score");
  if (label.empty()) fail(ErrorKind::Protocol, "detection without a label");
}

PixelRect box_pixels(const Detection& d, int width, int height, int dilation) {
  constexpr double eps = 1e-9;
  PixelRect r;
  r.x0 = static_cast<int>(std::floor(d.box[0] * width + eps)) - dilation;
  r.y0 = static_cast<int>(std::floor(d.box[1] * height + eps)) - dilation;
  r.x1 = static_cast<int>(std::ceil(d.box[2] * width - eps)) - 1 + dilation;
  r.y1 = static_cast<int>(std::ceil(d.box[3] * height - eps)) - 1 + dilation;
  r.x0 = std::clamp(r.x0, 0, width - 1);
  r.y0 = std::clamp(r.y0, 0, height - 1);
  r.x1 = std::clamp(r.x1, 0, width - 1);
  r.y1 = std::clamp(r.y1, 0, height - 1);
  return r;
}

}  // namespace zsc
