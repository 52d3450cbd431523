#include "guidyn/env/render.hpp"

#include <algorithm>
#include <cstring>

#include "guidyn/common/errors.hpp"
#include "guidyn/common/hash.hpp"

namespace guidyn {

namespace {

constexpr int kStripInset = 2;
constexpr int kStripBits = 8;

std::uint8_t background_for(const std::string& template_id) {
  return static_cast<std::uint8_t>(20 + hash_parts({"bg", template_id}) % 60);
}

std::uint8_t fill_for(const AxNode& node) {
  return static_cast<std::uint8_t>(90 + hash_parts({"fill", node.tag, node.text}) % 160);
}

void paint_node(Raster& r, const AxNode& node) {
  const int x0 = std::max(0, node.bounds.x);
  const int y0 = std::max(0, node.bounds.y);
  const int x1 = std::min(r.width, node.bounds.x + node.bounds.w);
  const int y1 = std::min(r.height, node.bounds.y + node.bounds.h);
  if (x0 >= x1 || y0 >= y1) return;

  const std::uint8_t fill = fill_for(node);
  for (int y = y0; y < y1; ++y) {
    std::memset(&r.pixels[static_cast<std::size_t>(y) * r.width + x0], fill,
                static_cast<std::size_t>(x1 - x0));
  }

  // One column per text byte, one row per bit; set bits flip the fill's high bit.
  const std::uint8_t ink = fill ^ 0x80;
  for (std::size_t i = 0; i < node.text.size(); ++i) {
    const int x = x0 + kStripInset + static_cast<int>(i);
    if (x >= x1) break;
    const auto byte = static_cast<unsigned char>(node.text[i]);
    for (int b = 0; b < kStripBits; ++b) {
      const int y = y0 + kStripInset + b;
      if (y >= y1) break;
      if ((byte >> b) & 1) r.at(x, y) = ink;
    }
  }
}

}  // namespace

Raster render(const std::string& template_id, const std::vector<AxNode>& tree, ScreenDims dims) {
  Raster r(dims.width, dims.height, background_for(template_id));
  for (const auto& node : tree) paint_node(r, node);
  return r;
}

std::string encode_raster(const Raster& raster) {
  std::string out(8 + raster.pixels.size(), '\0');
  auto put32 = [&](std::size_t at, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out[at + i] = static_cast<char>((v >> (8 * i)) & 0xff);
  };
  put32(0, static_cast<std::uint32_t>(raster.width));
  put32(4, static_cast<std::uint32_t>(raster.height));
  std::memcpy(out.data() + 8, raster.pixels.data(), raster.pixels.size());
  return out;
}

Raster decode_raster(std::string_view bytes) {
  if (bytes.size() < 8) throw DataError("raster shorter than its header");
  auto get32 = [&](std::size_t at) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[at + i])) << (8 * i);
    return v;
  };
  const std::uint32_t w = get32(0);
  const std::uint32_t h = get32(4);
  if (static_cast<std::uint64_t>(w) * h != bytes.size() - 8) {
    throw DataError("raster payload does not match its header");
  }
  Raster r(static_cast<int>(w), static_cast<int>(h));
  std::memcpy(r.pixels.data(), bytes.data() + 8, r.pixels.size());
  return r;
}

}  // namespace guidyn
