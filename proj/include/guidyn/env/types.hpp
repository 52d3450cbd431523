#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "guidyn/env/action.hpp"

namespace guidyn {

struct Rect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  // Half-open: [x, x + w) x [y, y + h).
  bool contains(Point p) const noexcept {
    return p.x >= x && p.x < x + w && p.y >= y && p.y < y + h;
  }
  Point center() const noexcept { return {x + w / 2, y + h / 2}; }
  long area() const noexcept { return static_cast<long>(w) * h; }

  friend bool operator==(const Rect&, const Rect&) = default;
};

enum class EventKind : std::uint8_t { kClickable = 1, kEditable = 2, kScrollable = 4 };

class EventSet {
 public:
  constexpr EventSet() = default;
  constexpr explicit EventSet(std::uint8_t bits) : bits_(bits & 7) {}

  constexpr bool has(EventKind e) const noexcept {
    return (bits_ & static_cast<std::uint8_t>(e)) != 0;
  }
  constexpr EventSet with(EventKind e) const noexcept {
    return EventSet(static_cast<std::uint8_t>(bits_ | static_cast<std::uint8_t>(e)));
  }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr std::uint8_t bits() const noexcept { return bits_; }

  // Canonical "clickable|editable|scrollable" subset rendering; "" when empty.
  std::string to_string() const;
  static EventSet parse(const std::string& s);

  friend constexpr bool operator==(EventSet, EventSet) = default;

 private:
  std::uint8_t bits_ = 0;
};

struct AxNode {
  std::string node_id;
  std::string tag;
  std::string xpath;
  std::string text;
  Rect bounds;
  EventSet events;

  friend bool operator==(const AxNode&, const AxNode&) = default;
};

struct Raster {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, one byte per pixel

  Raster() = default;
  Raster(int w, int h, std::uint8_t fill = 0)
      : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}

  std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  bool empty() const noexcept { return width <= 0 || height <= 0; }

  friend bool operator==(const Raster&, const Raster&) = default;
};

struct UiState {
  std::string state_id;
  std::string template_id;
  std::string semantic_label;
  std::vector<AxNode> tree;  // document order
  Raster raster;

  const AxNode* find_node(const std::string& node_id) const;
};

enum class EdgeFlag { kValid, kSystemError, kRenderArtifact, kNoOp };

const char* to_string(EdgeFlag flag) noexcept;
EdgeFlag edge_flag_from_string(const std::string& s);

}  // namespace guidyn
