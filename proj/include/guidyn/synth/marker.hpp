#pragma once

#include "guidyn/env/action.hpp"
#include "guidyn/env/types.hpp"

namespace guidyn {

// Ring radius for a raster: 5% of its diagonal, rounded.
int marker_radius(int width, int height);

// Inverts every pixel whose distance to the action point is within 1 of the ring radius.
// Finish and wait return the raster unchanged. Normalized coordinates are mapped into the
// raster's pixel space first. Throws DataError on out-of-range coordinates.
Raster annotate_marker(const Raster& raster, const Action& action);

}  // namespace guidyn
