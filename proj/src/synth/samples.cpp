#include "guidyn/synth/samples.hpp"

#include "guidyn/common/errors.hpp"

namespace guidyn {

namespace {

struct KindInfo {
  TaskKind kind;
  const char* name;
  std::vector<const char*> roles;  // input roles in order
  const char* target;              // obs_desc, action_desc, atomic_action or outcome_desc
};

const std::vector<KindInfo>& kind_table() {
  static const std::vector<KindInfo> table = {
      {TaskKind::kFwdU, "fwd_u", {"image_pre", "action_desc"}, "outcome_desc"},
      {TaskKind::kFwdA, "fwd_a", {"image_pre", "atomic_action"}, "outcome_desc"},
      {TaskKind::kInvImgU, "inv_img_u", {"image_pre", "image_post"}, "action_desc"},
      {TaskKind::kInvImgA, "inv_img_a", {"image_pre", "image_post"}, "atomic_action"},
      {TaskKind::kInvDescU, "inv_desc_u", {"image_pre", "outcome_desc"}, "action_desc"},
      {TaskKind::kInvDescA, "inv_desc_a", {"image_pre", "outcome_desc"}, "atomic_action"},
      {TaskKind::kBwd, "bwd", {"action_desc", "image_post"}, "obs_desc"},
  };
  return table;
}

const KindInfo& info(TaskKind k) {
  for (const auto& i : kind_table()) {
    if (i.kind == k) return i;
  }
  throw DataError("unknown task kind");
}

bool is_image_role(std::string_view role) { return role.rfind("image_", 0) == 0; }

constexpr std::string_view kForwardAlternatives = "{action_summary} or {atomic_action}";

std::string forward_template(bool atomic) {
  std::string text(prompt_asset("forward_dynamics"));
  const std::size_t pos = text.find(kForwardAlternatives);
  if (pos == std::string::npos) throw ConfigError("forward prompt lost its input placeholder");
  text.replace(pos, kForwardAlternatives.size(), atomic ? "{atomic_action}" : "{action_summary}");
  return text;
}

PromptMessages prompt_for(TaskKind k, const std::string& action_desc, const std::string& atomic,
                          const std::string& outcome) {
  switch (k) {
    case TaskKind::kFwdU:
      return split_prompt(fill_prompt(forward_template(false), {{"action_summary", action_desc}}));
    case TaskKind::kFwdA:
      return split_prompt(fill_prompt(forward_template(true), {{"atomic_action", atomic}}));
    case TaskKind::kInvImgU:
    case TaskKind::kInvImgA:
      return render_prompt("inverse_dynamics", {});
    case TaskKind::kInvDescU:
    case TaskKind::kInvDescA:
      return render_prompt("inverse_dynamics_goal", {{"after_screenshot_summary", outcome}});
    case TaskKind::kBwd:
      return render_prompt("backward_dynamics", {{"action_summary", action_desc}});
  }
  throw DataError("unknown task kind");
}

}  // namespace

const std::vector<TaskKind>& all_task_kinds() {
  static const std::vector<TaskKind> kinds = [] {
    std::vector<TaskKind> v;
    for (const auto& i : kind_table()) v.push_back(i.kind);
    return v;
  }();
  return kinds;
}

std::string to_string(TaskKind k) { return info(k).name; }

TaskKind task_kind_from_string(std::string_view s) {
  for (const auto& i : kind_table()) {
    if (s == i.name) return i.kind;
  }
  throw DataError("unknown task kind: " + std::string(s));
}

std::string image_ref(const std::string& app_id, const std::string& state_id) {
  return app_id + "/rasters/" + state_id + ".gray";
}

std::vector<TrainingSample> emit_samples(const Transition& t, const GroundedAnnotation& ann,
                                         const std::vector<TaskKind>& kinds) {
  if (ann.transition_id != t.transition_id) throw DataError("annotation belongs to another transition");
  validate(ann);
  const std::string atomic = format_action(t.action);
  auto value_of = [&](std::string_view role) -> std::string {
    if (role == "image_pre") return image_ref(t.app_id, t.pre);
    if (role == "image_post") return image_ref(t.app_id, t.post);
    if (role == "action_desc") return ann.action_desc;
    if (role == "atomic_action") return atomic;
    if (role == "outcome_desc") return ann.outcome_desc;
    if (role == "obs_desc") return ann.obs_desc;
    throw DataError("unknown sample role");
  };
  std::vector<TrainingSample> out;
  out.reserve(kinds.size());
  for (TaskKind k : kinds) {
    const KindInfo& ki = info(k);
    TrainingSample s;
    s.sample_id = t.transition_id + "#" + ki.name;
    s.task_kind = k;
    s.prompt = prompt_for(k, ann.action_desc, atomic, ann.outcome_desc);
    for (const char* role : ki.roles) {
      s.inputs.push_back({is_image_role(role) ? Modality::kImage : Modality::kText, role,
                          value_of(role)});
    }
    s.target = value_of(ki.target);
    s.provenance = t.transition_id;
    out.push_back(std::move(s));
  }
  return out;
}

void validate(const TrainingSample& s) {
  const KindInfo& ki = info(s.task_kind);
  if (s.sample_id != s.provenance + "#" + ki.name) throw DataError("sample id does not match its kind");
  if (s.inputs.size() != ki.roles.size()) {
    throw DataError("sample " + s.sample_id + " has the wrong input arity");
  }
  for (std::size_t i = 0; i < s.inputs.size(); ++i) {
    const bool image = is_image_role(ki.roles[i]);
    if (s.inputs[i].role != ki.roles[i] ||
        s.inputs[i].modality != (image ? Modality::kImage : Modality::kText) ||
        s.inputs[i].value.empty()) {
      throw DataError("sample " + s.sample_id + " input " + std::to_string(i) + " has the wrong shape");
    }
  }
  if (s.target.empty() || s.prompt.user.empty()) throw DataError("sample " + s.sample_id + " is incomplete");
}

Json sample_to_json(const TrainingSample& s) {
  Json j;
  j["sample_id"] = s.sample_id;
  j["task_kind"] = to_string(s.task_kind);
  j["prompt"] = {{"system", s.prompt.system}, {"user", s.prompt.user}};
  Json inputs = Json::array();
  for (const auto& in : s.inputs) {
    Json e;
    e["modality"] = in.modality == Modality::kImage ? "image" : "text";
    e["role"] = in.role;
    e[in.modality == Modality::kImage ? "path" : "text"] = in.value;
    inputs.push_back(std::move(e));
  }
  j["inputs"] = std::move(inputs);
  j["target"] = s.target;
  j["provenance"] = s.provenance;
  return j;
}

TrainingSample sample_from_json(const Json& j) {
  try {
    TrainingSample s;
    s.sample_id = j.at("sample_id").get<std::string>();
    s.task_kind = task_kind_from_string(j.at("task_kind").get<std::string>());
    s.prompt.system = j.at("prompt").at("system").get<std::string>();
    s.prompt.user = j.at("prompt").at("user").get<std::string>();
    for (const auto& e : j.at("inputs")) {
      const std::string modality = e.at("modality").get<std::string>();
      if (modality != "image" && modality != "text") throw DataError("unknown modality " + modality);
      const bool image = modality == "image";
      s.inputs.push_back({image ? Modality::kImage : Modality::kText, e.at("role").get<std::string>(),
                          e.at(image ? "path" : "text").get<std::string>()});
    }
    s.target = j.at("target").get<std::string>();
    s.provenance = j.at("provenance").get<std::string>();
    validate(s);
    return s;
  } catch (const Json::exception& e) {
    throw DataError(std::string("bad sample record: ") + e.what());
  }
}

}  // namespace guidyn
