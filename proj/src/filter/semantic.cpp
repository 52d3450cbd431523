#include "guidyn/filter/semantic.hpp"

#include <algorithm>

#include "guidyn/common/errors.hpp"
#include "guidyn/common/parallel.hpp"
#include "guidyn/common/tags.hpp"
#include "guidyn/env/coords.hpp"
#include "guidyn/prompts/prompts.hpp"

namespace guidyn {

std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::kAccepted: return "accepted";
    case VerdictStatus::kRejected: return "rejected";
    case VerdictStatus::kUnavailable: return "unavailable";
    case VerdictStatus::kMalformed: return "malformed";
  }
  return "?";
}

VerdictStatus verdict_status_from_string(std::string_view s) {
  for (auto v : {VerdictStatus::kAccepted, VerdictStatus::kRejected, VerdictStatus::kUnavailable,
                 VerdictStatus::kMalformed}) {
    if (to_string(v) == s) return v;
  }
  throw DataError("unknown verdict status: " + std::string(s));
}

Json verdict_to_json(const Verdict& v) {
  Json j;
  j["transition_id"] = v.transition_id;
  j["valid"] = v.valid;
  j["reason"] = v.reason;
  j["status"] = to_string(v.status);
  return j;
}

Verdict verdict_from_json(const Json& j) {
  try {
    return Verdict{j.at("transition_id").get<std::string>(), j.at("valid").get<bool>(),
                   j.at("reason").get<std::string>(),
                   verdict_status_from_string(j.at("status").get<std::string>())};
  } catch (const Json::exception& e) {
    throw DataError(std::string("bad verdict record: ") + e.what());
  }
}

namespace {

Verdict make_verdict(const Transition& t, bool valid, std::string reason) {
  return {t.transition_id, valid, std::move(reason),
          valid ? VerdictStatus::kAccepted : VerdictStatus::kRejected};
}

}  // namespace

Verdict RuleVerifier::verify(const Transition& t, const GraphSet& graphs) const {
  const ResolvedTransition r = resolve(t, graphs);
  if (t.edge_flag != EdgeFlag::kValid) {
    return make_verdict(t, false, std::string("flag_") + to_string(t.edge_flag));
  }
  if (!t.action.has_point()) return make_verdict(t, false, "no_target");
  EventKind needed = EventKind::kClickable;
  if (t.action.kind() == ActionKind::kInput) needed = EventKind::kEditable;
  if (t.action.kind() == ActionKind::kScroll) needed = EventKind::kScrollable;
  const Action abs = to_absolute_space(t.action, r.graph->dims());
  if (node_at(*r.pre, abs.point(), needed) == nullptr) {
    return make_verdict(t, false, "event_not_permitted");
  }
  if (t.pre == t.post) return make_verdict(t, false, "no_state_change");
  return make_verdict(t, true, "consistent");
}

Json semantic_request(const Transition& t, const GraphSet& graphs) {
  const ResolvedTransition r = resolve(t, graphs);
  const PromptMessages prompt =
      render_prompt("semantic_verifier", {{"action", format_action(t.action)}});
  Json j;
  j["request_id"] = t.transition_id;
  j["task"] = "semantic_verification";
  j["prompt_version"] = std::string(kPromptVersion);
  j["prompt"] = {{"system", prompt.system}, {"user", prompt.user}};
  j["images"] = Json::array({raster_to_json(r.pre->raster), raster_to_json(r.post->raster)});
  j["action"] = action_to_json(t.action);
  return j;
}

std::optional<std::pair<bool, std::string>> parse_semantic_output(std::string_view output) {
  const auto score = single_tag(output, "score");
  if (!score) return {};
  const std::string s = trim(*score);
  if (s != "0" && s != "1") return {};
  std::string reason;
  if (count_occurrences(output, "<reason>") > 0) {
    const auto r = single_tag(output, "reason");
    if (!r) return {};
    reason = trim(*r);
  }
  return std::make_pair(s == "1", reason.empty() ? std::string("remote") : reason);
}

Verdict RemoteVerifier::verify(const Transition& t, const GraphSet& graphs) const {
  const RemoteReply reply = client_.post(semantic_request(t, graphs), t.transition_id);
  if (reply.status != ReplyStatus::kOk) {
    return {t.transition_id, false, "verifier_unavailable", VerdictStatus::kUnavailable};
  }
  const auto output = reply_output(reply.body);
  const auto parsed = output ? parse_semantic_output(*output) : std::nullopt;
  if (!parsed) return {t.transition_id, false, "malformed_response", VerdictStatus::kMalformed};
  return make_verdict(t, parsed->first, parsed->second);
}

SemanticResult filter_semantic(const std::vector<Transition>& corpus, const GraphSet& graphs,
                               const Verifier& verifier, std::size_t parallelism) {
  SemanticResult out;
  out.verdicts.resize(corpus.size());
  const std::size_t width = std::max<std::size_t>(1, std::min(parallelism, verifier.max_in_flight()));
  parallel_for(corpus.size(), width, [&](std::size_t i) {
    Verdict v = verifier.verify(corpus[i], graphs);
    if (v.transition_id != corpus[i].transition_id) {
      throw DataError("verifier returned a verdict for another transition");
    }
    out.verdicts[i] = std::move(v);
  });
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Verdict& v = out.verdicts[i];
    switch (v.status) {
      case VerdictStatus::kAccepted:
        ++out.accepted;
        out.survivors.push_back(corpus[i]);
        break;
      case VerdictStatus::kRejected:
        ++out.rejected;
        ++out.reject_reasons[v.reason];
        break;
      case VerdictStatus::kUnavailable:
        ++out.unavailable;
        out.quarantined.push_back(corpus[i]);
        break;
      case VerdictStatus::kMalformed:
        ++out.malformed;
        out.quarantined.push_back(corpus[i]);
        break;
    }
  }
  return out;
}

}  // namespace guidyn
