#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace guidyn {

struct ScreenDims {
  int width = 256;
  int height = 512;

  friend bool operator==(const ScreenDims&, const ScreenDims&) = default;
};

enum class ActionKind { kClick, kInput, kScroll, kFinish, kWait };
enum class Direction { kUp, kDown, kLeft, kRight };

// Absolute pixels in [0, W] x [0, H], or integers quantized to [0, 1000].
enum class CoordSpace { kAbsolute, kNormalized1000 };

inline constexpr int kNormalizedMax = 1000;

struct Point {
  int x = 0;
  int y = 0;

  friend bool operator==(const Point&, const Point&) = default;
};

// A typed operation with exactly the parameters its kind requires:
//   click (x, y) | input (x, y, text) | scroll (x, y, direction) | finish | wait
class Action {
 public:
  static Action click(Point p, CoordSpace space = CoordSpace::kAbsolute);
  static Action input(Point p, std::string text, CoordSpace space = CoordSpace::kAbsolute);
  static Action scroll(Point p, Direction dir, CoordSpace space = CoordSpace::kAbsolute);
  static Action finish();
  static Action wait();

  ActionKind kind() const noexcept { return kind_; }
  CoordSpace space() const noexcept { return space_; }
  bool has_point() const noexcept { return point_.has_value(); }
  // Precondition: has_point().
  Point point() const { return *point_; }
  // Empty unless kind() == kInput.
  const std::string& text() const noexcept { return text_; }
  // Precondition: kind() == kScroll.
  Direction direction() const { return *direction_; }

  Action with_point(Point p, CoordSpace space) const;

  friend bool operator==(const Action&, const Action&) = default;

 private:
  Action(ActionKind kind, std::optional<Point> point, std::string text,
         std::optional<Direction> direction, CoordSpace space)
      : kind_(kind), point_(point), text_(std::move(text)), direction_(direction), space_(space) {}

  ActionKind kind_;
  std::optional<Point> point_;
  std::string text_;
  std::optional<Direction> direction_;
  CoordSpace space_;
};

const char* to_string(ActionKind kind) noexcept;
const char* to_string(Direction dir) noexcept;
const char* to_string(CoordSpace space) noexcept;

std::optional<ActionKind> action_kind_from_string(std::string_view s);
std::optional<Direction> direction_from_string(std::string_view s);
std::optional<CoordSpace> coord_space_from_string(std::string_view s);

// Grammar form used in prompts and targets: "click 150 230", "input 40 80 hello world",
// "scroll 10 10 down", "finish", "wait".
std::string format_action(const Action& a);

// True when the coordinates lie inside the declared space for `dims`.
bool coordinates_in_range(const Action& a, ScreenDims dims) noexcept;

}  // namespace guidyn
