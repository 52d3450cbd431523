#include "guidyn/env/action.hpp"

#include <algorithm>
#include <cctype>

namespace guidyn {

Action Action::click(Point p, CoordSpace space) {
  return Action(ActionKind::kClick, p, {}, std::nullopt, space);
}

Action Action::input(Point p, std::string text, CoordSpace space) {
  return Action(ActionKind::kInput, p, std::move(text), std::nullopt, space);
}

Action Action::scroll(Point p, Direction dir, CoordSpace space) {
  return Action(ActionKind::kScroll, p, {}, dir, space);
}

Action Action::finish() {
  return Action(ActionKind::kFinish, std::nullopt, {}, std::nullopt, CoordSpace::kAbsolute);
}

Action Action::wait() {
  return Action(ActionKind::kWait, std::nullopt, {}, std::nullopt, CoordSpace::kAbsolute);
}

Action Action::with_point(Point p, CoordSpace space) const {
  Action copy = *this;
  if (copy.point_) copy.point_ = p;
  copy.space_ = space;
  return copy;
}

const char* to_string(ActionKind kind) noexcept {
  switch (kind) {
    case ActionKind::kClick: return "click";
    case ActionKind::kInput: return "input";
    case ActionKind::kScroll: return "scroll";
    case ActionKind::kFinish: return "finish";
    case ActionKind::kWait: return "wait";
  }
  return "?";
}

const char* to_string(Direction dir) noexcept {
  switch (dir) {
    case Direction::kUp: return "up";
    case Direction::kDown: return "down";
    case Direction::kLeft: return "left";
    case Direction::kRight: return "right";
  }
  return "?";
}

const char* to_string(CoordSpace space) noexcept {
  return space == CoordSpace::kAbsolute ? "absolute" : "normalized_1000";
}

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::optional<ActionKind> action_kind_from_string(std::string_view s) {
  const std::string k = lower(s);
  if (k == "click") return ActionKind::kClick;
  if (k == "input") return ActionKind::kInput;
  if (k == "scroll") return ActionKind::kScroll;
  if (k == "finish") return ActionKind::kFinish;
  if (k == "wait") return ActionKind::kWait;
  return std::nullopt;
}

std::optional<Direction> direction_from_string(std::string_view s) {
  const std::string d = lower(s);
  if (d == "up") return Direction::kUp;
  if (d == "down") return Direction::kDown;
  if (d == "left") return Direction::kLeft;
  if (d == "right") return Direction::kRight;
  return std::nullopt;
}

std::optional<CoordSpace> coord_space_from_string(std::string_view s) {
  if (s == "absolute") return CoordSpace::kAbsolute;
  if (s == "normalized_1000") return CoordSpace::kNormalized1000;
  return std::nullopt;
}

std::string format_action(const Action& a) {
  std::string out = to_string(a.kind());
  if (a.has_point()) {
    out += ' ';
    out += std::to_string(a.point().x);
    out += ' ';
    out += std::to_string(a.point().y);
  }
  if (a.kind() == ActionKind::kInput) {
    out += ' ';
    out += a.text();
  } else if (a.kind() == ActionKind::kScroll) {
    out += ' ';
    out += to_string(a.direction());
  }
  return out;
}

bool coordinates_in_range(const Action& a, ScreenDims dims) noexcept {
  if (!a.has_point()) return true;
  const Point p = a.point();
  if (a.space() == CoordSpace::kNormalized1000) {
    return p.x >= 0 && p.x <= kNormalizedMax && p.y >= 0 && p.y <= kNormalizedMax;
  }
  return p.x >= 0 && p.x <= dims.width && p.y >= 0 && p.y <= dims.height;
}

}  // namespace guidyn
