#pragma once

#include <string>
#include <vector>

#include "guidyn/explore/transition.hpp"
#include "guidyn/prompts/prompts.hpp"
#include "guidyn/synth/annotate.hpp"

namespace guidyn {

enum class TaskKind { kFwdU, kFwdA, kInvImgU, kInvImgA, kInvDescU, kInvDescA, kBwd };

const std::vector<TaskKind>& all_task_kinds();
std::string to_string(TaskKind k);
TaskKind task_kind_from_string(std::string_view s);

enum class Modality { kImage, kText };

struct SampleInput {
  Modality modality = Modality::kText;
  std::string role;   // image_pre, image_post, action_desc, atomic_action, outcome_desc
  std::string value;  // image path relative to the environment root, or text

  friend bool operator==(const SampleInput&, const SampleInput&) = default;
};

struct TrainingSample {
  std::string sample_id;
  TaskKind task_kind = TaskKind::kFwdU;
  PromptMessages prompt;
  std::vector<SampleInput> inputs;
  std::string target;
  std::string provenance;  // transition id

  friend bool operator==(const TrainingSample& a, const TrainingSample& b) {
    return a.sample_id == b.sample_id && a.task_kind == b.task_kind &&
           a.prompt.system == b.prompt.system && a.prompt.user == b.prompt.user &&
           a.inputs == b.inputs && a.target == b.target && a.provenance == b.provenance;
  }
};

// Relative path of a state's screenshot inside a saved environment.
std::string image_ref(const std::string& app_id, const std::string& state_id);

// One sample per kind, in the order given. Throws DataError on an annotation mismatch.
std::vector<TrainingSample> emit_samples(const Transition& t, const GroundedAnnotation& ann,
                                         const std::vector<TaskKind>& kinds);

// Throws DataError unless the input roles and modalities match the kind's shape.
void validate(const TrainingSample& s);

Json sample_to_json(const TrainingSample& s);
TrainingSample sample_from_json(const Json& j);

}  // namespace guidyn
