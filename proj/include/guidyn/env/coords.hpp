#pragma once

#include "guidyn/env/action.hpp"

namespace guidyn {

// normalized = round(abs * 1000 / dim), clamped to [0, 1000].
int to_normalized(int absolute, int dim);
// absolute = round(norm * dim / 1000).
int to_absolute(int normalized, int dim);

// Re-expresses the action's coordinates in `to`. Actions without coordinates are returned
// unchanged apart from the declared space. Throws DataError on a zero screen dimension.
Action convert_coords(const Action& a, CoordSpace from, CoordSpace to, ScreenDims dims);

inline Action to_absolute_space(const Action& a, ScreenDims dims) {
  return convert_coords(a, a.space(), CoordSpace::kAbsolute, dims);
}

}  // namespace guidyn
