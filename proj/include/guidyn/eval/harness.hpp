#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "guidyn/env/serialize.hpp"
#include "guidyn/synth/generalization.hpp"

namespace guidyn {

enum class ParseFailure {
  kNone,
  kEmpty,
  kUnknownKind,
  kArity,
  kBadNumber,
  kOutOfRange,
  kBadDirection,
  kMalformedCot,
};

std::string to_string(ParseFailure f);

struct ParsedAction {
  std::optional<Action> action;
  ParseFailure failure = ParseFailure::kNone;
  std::string message;

  bool ok() const noexcept { return action.has_value(); }
};

// Whitespace-tokenized action grammar, case-insensitive kinds and directions. Input text is
// the trimmed remainder after the coordinates. Never throws.
ParsedAction parse_action(std::string_view text, CoordSpace space, ScreenDims dims = {});

struct CotOutput {
  std::string think;
  std::string sub_goal;
  std::string answer;
};

// Exactly one of each tag, in the order think, sub_goal, answer; surrounding text ignored.
std::optional<CotOutput> parse_cot(std::string_view text);

// Parses a model reply: the full tag grammar when any of the three tags appears, otherwise
// the bare text as an action.
ParsedAction parse_prediction(std::string_view text, CoordSpace space, ScreenDims dims = {});

struct EvalRecord {
  std::string item_id;
  Action gt_action = Action::wait();
  std::optional<Rect> gt_target_bounds;  // absolute pixels
  std::string gt_state;
  std::string prediction_text;
  CoordSpace coord_space = CoordSpace::kAbsolute;  // space of the prediction
  ScreenDims dims;
};

Json record_to_json(const EvalRecord& r);
EvalRecord record_from_json(const Json& j);

struct ScoringParams {
  double radius_fraction = 0.07;  // of the screen diagonal
  bool use_bounds = true;
};

struct Score {
  bool em = false;
  bool tm = false;
  ParseFailure failure = ParseFailure::kNone;
};

Score score(const EvalRecord& record, const ScoringParams& params = {});

struct KindMetrics {
  std::size_t count = 0;
  double em = 0.0;
  double tm = 0.0;
};

struct Metrics {
  std::size_t n = 0;
  double em = 0.0;
  double tm = 0.0;
  double parse_failure_rate = 0.0;
  std::map<std::string, KindMetrics> per_kind;  // by ground-truth kind
};

// Micro-averaged metrics. Throws DataError on an empty record set.
Metrics evaluate(const std::vector<EvalRecord>& records, const ScoringParams& params = {});
Json metrics_to_json(const Metrics& m);

// Mean judge score. Any verdict that fails to parse aborts with DataError.
double aggregate_judged(const std::vector<std::string>& judge_outputs, JudgeTask task);

}  // namespace guidyn
