#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "guidyn/env/graph.hpp"
#include "guidyn/synth/samples.hpp"

namespace guidyn {

enum class GenLevel { kL1, kL2 };  // single edge, two chained edges
enum class GenTask { kForward, kInverse };

std::string to_string(GenLevel l);
std::string to_string(GenTask t);
GenLevel gen_level_from_string(std::string_view s);
GenTask gen_task_from_string(std::string_view s);

struct GeneralizationItem {
  std::string item_id;
  GenLevel level = GenLevel::kL1;
  GenTask task = GenTask::kForward;
  std::string app_id;
  std::vector<std::string> path;          // visited state ids, start to target
  std::vector<Action> actions;            // one per edge
  std::vector<std::string> action_descs;  // one per edge
  PromptMessages prompt;
  std::vector<SampleInput> inputs;
  // Forward: up to five ground-truth elements of the target. Inverse: the first action
  // description.
  std::vector<std::string> reference;

  const std::string& target_state() const { return path.back(); }
  friend bool operator==(const GeneralizationItem& a, const GeneralizationItem& b) {
    return a.item_id == b.item_id && a.level == b.level && a.task == b.task &&
           a.app_id == b.app_id && a.path == b.path && a.actions == b.actions &&
           a.action_descs == b.action_descs && a.prompt.system == b.prompt.system &&
           a.prompt.user == b.prompt.user && a.inputs == b.inputs && a.reference == b.reference;
  }
};

// Samples n distinct single-edge (L1) or two-edge (L2) paths over valid edges that change
// state. Throws DataError when fewer than n such paths exist.
std::vector<GeneralizationItem> build_generalization_items(const EnvGraph& graph, GenLevel level,
                                                           GenTask task, std::size_t n,
                                                           std::uint64_t seed);

// True when stepping the recorded actions from the first state visits the recorded path.
bool replay(const EnvGraph& graph, const GeneralizationItem& item);

Json item_to_json(const GeneralizationItem& item);
GeneralizationItem item_from_json(const Json& j);

enum class JudgeTask { kForward, kInverse };

struct JudgeVerdict {
  std::string reason;
  double score = 0.0;
};

// Requires exactly one <reason> and one <score>. Forward scores must be one of
// 0, 0.2, 0.4, 0.6, 0.8, 1 and inverse scores 0 or 1, written as plain decimals
// (trailing zeros allowed). Throws DataError otherwise.
JudgeVerdict parse_judge_verdict(std::string_view text, JudgeTask task);

}  // namespace guidyn
