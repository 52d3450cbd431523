#include "guidyn/env/types.hpp"

#include "guidyn/common/errors.hpp"

namespace guidyn {

std::string EventSet::to_string() const {
  std::string out;
  auto add = [&](EventKind e, const char* name) {
    if (!has(e)) return;
    if (!out.empty()) out += '|';
    out += name;
  };
  add(EventKind::kClickable, "clickable");
  add(EventKind::kEditable, "editable");
  add(EventKind::kScrollable, "scrollable");
  return out;
}

EventSet EventSet::parse(const std::string& s) {
  EventSet set;
  std::size_t start = 0;
  while (start < s.size()) {
    std::size_t end = s.find('|', start);
    if (end == std::string::npos) end = s.size();
    const std::string part = s.substr(start, end - start);
    if (part == "clickable") {
      set = set.with(EventKind::kClickable);
    } else if (part == "editable") {
      set = set.with(EventKind::kEditable);
    } else if (part == "scrollable") {
      set = set.with(EventKind::kScrollable);
    } else {
      throw DataError("unknown event kind '" + part + "'");
    }
    start = end + 1;
  }
  return set;
}

const AxNode* UiState::find_node(const std::string& node_id) const {
  for (const auto& n : tree) {
    if (n.node_id == node_id) return &n;
  }
  return nullptr;
}

const char* to_string(EdgeFlag flag) noexcept {
  switch (flag) {
    case EdgeFlag::kValid: return "valid";
    case EdgeFlag::kSystemError: return "system_error";
    case EdgeFlag::kRenderArtifact: return "render_artifact";
    case EdgeFlag::kNoOp: return "no_op";
  }
  return "?";
}

EdgeFlag edge_flag_from_string(const std::string& s) {
  if (s == "valid") return EdgeFlag::kValid;
  if (s == "system_error") return EdgeFlag::kSystemError;
  if (s == "render_artifact") return EdgeFlag::kRenderArtifact;
  if (s == "no_op") return EdgeFlag::kNoOp;
  throw DataError("unknown edge flag '" + s + "'");
}

}  // namespace guidyn
