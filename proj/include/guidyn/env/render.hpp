#pragma once

#include <string>
#include <vector>

#include "guidyn/env/types.hpp"

namespace guidyn {

// Paints a template-dependent background, then each node in document order as a filled
// rectangle whose intensity hashes from (tag, text), overlaid with a bit-column strip
// encoding the text bytes. Pure: identical inputs give identical rasters.
Raster render(const std::string& template_id, const std::vector<AxNode>& tree, ScreenDims dims);

// Raw raster file: 4-byte LE width, 4-byte LE height, then row-major bytes.
std::string encode_raster(const Raster& raster);
Raster decode_raster(std::string_view bytes);

}  // namespace guidyn
