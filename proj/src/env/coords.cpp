#include "guidyn/env/coords.hpp"

#include <algorithm>
#include <cstdint>

#include "guidyn/common/errors.hpp"

namespace guidyn {

namespace {

// round(num / den) for num >= 0, den > 0, halves rounded up.
std::int64_t round_div(std::int64_t num, std::int64_t den) {
  if (num < 0) return -round_div(-num, den);
  return (2 * num + den) / (2 * den);
}

void require_dim(int dim) {
  if (dim <= 0) throw DataError("screen dimension must be positive");
}

}  // namespace

int to_normalized(int absolute, int dim) {
  require_dim(dim);
  const auto n = round_div(static_cast<std::int64_t>(absolute) * kNormalizedMax, dim);
  return static_cast<int>(std::clamp<std::int64_t>(n, 0, kNormalizedMax));
}

int to_absolute(int normalized, int dim) {
  require_dim(dim);
  return static_cast<int>(round_div(static_cast<std::int64_t>(normalized) * dim, kNormalizedMax));
}

Action convert_coords(const Action& a, CoordSpace from, CoordSpace to, ScreenDims dims) {
  require_dim(dims.width);
  require_dim(dims.height);
  if (!a.has_point() || from == to) return a.with_point(a.has_point() ? a.point() : Point{}, to);
  const Point p = a.point();
  Point out;
  if (to == CoordSpace::kNormalized1000) {
    out = {to_normalized(p.x, dims.width), to_normalized(p.y, dims.height)};
  } else {
    out = {to_absolute(p.x, dims.width), to_absolute(p.y, dims.height)};
  }
  return a.with_point(out, to);
}

}  // namespace guidyn
