#include "guidyn/synth/marker.hpp"

#include <algorithm>
#include <cmath>

#include "guidyn/common/errors.hpp"
#include "guidyn/env/coords.hpp"

namespace guidyn {

int marker_radius(int width, int height) {
  return static_cast<int>(std::lround(0.05 * std::hypot(width, height)));
}

Raster annotate_marker(const Raster& raster, const Action& action) {
  if (!action.has_point()) return raster;
  if (raster.empty()) throw DataError("cannot mark an empty raster");
  const ScreenDims dims{raster.width, raster.height};
  if (!coordinates_in_range(action, dims)) throw DataError("marker coordinates out of range");
  const Point c = to_absolute_space(action, dims).point();
  const int r = marker_radius(raster.width, raster.height);
  const std::int64_t inner = static_cast<std::int64_t>(std::max(0, r - 1)) * std::max(0, r - 1);
  const std::int64_t outer = static_cast<std::int64_t>(r + 1) * (r + 1);
  Raster out = raster;
  for (int y = std::max(0, c.y - r - 1); y <= std::min(raster.height - 1, c.y + r + 1); ++y) {
    for (int x = std::max(0, c.x - r - 1); x <= std::min(raster.width - 1, c.x + r + 1); ++x) {
      const std::int64_t dx = x - c.x, dy = y - c.y;
      const std::int64_t d2 = dx * dx + dy * dy;
      if (d2 >= inner && d2 <= outer) out.at(x, y) = static_cast<std::uint8_t>(255 - out.at(x, y));
    }
  }
  return out;
}

}  // namespace guidyn
