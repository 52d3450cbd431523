#include "guidyn/synth/annotate.hpp"

#include <regex>

#include "guidyn/common/errors.hpp"
#include "guidyn/common/parallel.hpp"
#include "guidyn/common/tags.hpp"
#include "guidyn/env/coords.hpp"
#include "guidyn/prompts/prompts.hpp"
#include "guidyn/synth/marker.hpp"

namespace guidyn {

void validate(const GroundedAnnotation& a) {
  if (a.transition_id.empty()) throw DataError("annotation without transition id");
  if (trim(a.obs_desc).empty() || trim(a.action_desc).empty() || trim(a.outcome_desc).empty()) {
    throw DataError("annotation for " + a.transition_id + " has an empty field");
  }
  static const std::regex coordinate_pair(R"(\d+\s*[, ]\s*\d+)");
  if (std::regex_search(a.action_desc, coordinate_pair)) {
    throw DataError("action description for " + a.transition_id + " contains coordinates");
  }
}

Json annotation_to_json(const GroundedAnnotation& a) {
  Json j;
  j["transition_id"] = a.transition_id;
  j["obs_desc"] = a.obs_desc;
  j["action_desc"] = a.action_desc;
  j["outcome_desc"] = a.outcome_desc;
  return j;
}

GroundedAnnotation annotation_from_json(const Json& j) {
  try {
    GroundedAnnotation a{j.at("transition_id").get<std::string>(),
                         j.at("obs_desc").get<std::string>(), j.at("action_desc").get<std::string>(),
                         j.at("outcome_desc").get<std::string>()};
    validate(a);
    return a;
  } catch (const Json::exception& e) {
    throw DataError(std::string("bad annotation record: ") + e.what());
  }
}

namespace {

std::string element_name(const AxNode* node, const char* fallback) {
  if (node == nullptr) return fallback;
  if (!node->text.empty()) return "the \"" + node->text + "\" " + node->tag;
  return "the " + node->tag;
}

}  // namespace

std::string describe_action(const UiState& state, const Action& action, ScreenDims dims) {
  switch (action.kind()) {
    case ActionKind::kFinish: return "Finish the task";
    case ActionKind::kWait: return "Wait for the page to respond";
    default: break;
  }
  const Point p = to_absolute_space(action, dims).point();
  switch (action.kind()) {
    case ActionKind::kClick:
      return "Tap " + element_name(node_at(state, p, EventKind::kClickable), "an empty area");
    case ActionKind::kInput:
      return "Type \"" + action.text() + "\" into " +
             element_name(node_at(state, p, EventKind::kEditable), "an empty area");
    case ActionKind::kScroll:
      return std::string("Scroll ") + to_string(action.direction()) + " on " +
             element_name(node_at(state, p, EventKind::kScrollable), "an empty area");
    default: break;
  }
  throw DataError("unsupported action kind");
}

std::optional<GroundedAnnotation> OfflineAnnotator::annotate(const Transition& t,
                                                             const GraphSet& graphs) const {
  const ResolvedTransition r = resolve(t, graphs);
  GroundedAnnotation a{t.transition_id, r.pre->semantic_label,
                       describe_action(*r.pre, t.action, r.graph->dims()), r.post->semantic_label};
  validate(a);
  return a;
}

Json annotation_request(const Transition& t, const GraphSet& graphs) {
  const ResolvedTransition r = resolve(t, graphs);
  const PromptMessages prompt =
      render_prompt("grounded_annotation", {{"action", format_action(t.action)}});
  Json j;
  j["request_id"] = t.transition_id;
  j["task"] = "grounded_annotation";
  j["prompt_version"] = std::string(kPromptVersion);
  j["prompt"] = {{"system", prompt.system}, {"user", prompt.user}};
  j["images"] = Json::array({raster_to_json(annotate_marker(r.pre->raster, t.action)),
                             raster_to_json(r.post->raster)});
  j["action"] = action_to_json(t.action);
  return j;
}

std::optional<GroundedAnnotation> parse_annotation_output(const std::string& transition_id,
                                                          std::string_view output) {
  const auto obs = single_tag(output, "observation_description");
  const auto act = single_tag(output, "action_description");
  const auto out = single_tag(output, "outcome_description");
  if (!obs || !act || !out) return {};
  GroundedAnnotation a{transition_id, trim(*obs), trim(*act), trim(*out)};
  try {
    validate(a);
  } catch (const DataError&) {
    return {};
  }
  return a;
}

std::optional<GroundedAnnotation> RemoteAnnotator::annotate(const Transition& t,
                                                            const GraphSet& graphs) const {
  const RemoteReply reply = client_.post(annotation_request(t, graphs), t.transition_id);
  if (reply.status != ReplyStatus::kOk) return {};
  const auto output = reply_output(reply.body);
  if (!output) return {};
  return parse_annotation_output(t.transition_id, *output);
}

AnnotationBatch annotate_all(const std::vector<Transition>& corpus, const GraphSet& graphs,
                             const Annotator& annotator, std::size_t parallelism) {
  std::vector<std::optional<GroundedAnnotation>> slots(corpus.size());
  const std::size_t width = std::max<std::size_t>(1, std::min(parallelism, annotator.max_in_flight()));
  parallel_for(corpus.size(), width,
               [&](std::size_t i) { slots[i] = annotator.annotate(corpus[i], graphs); });
  AnnotationBatch batch;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (slots[i]) {
      batch.annotations.push_back(std::move(*slots[i]));
    } else {
      batch.skipped.push_back(corpus[i].transition_id);
    }
  }
  return batch;
}

}  // namespace guidyn
