#include "guidyn/eval/harness.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <cmath>
#include <sstream>

#include "guidyn/common/errors.hpp"
#include "guidyn/common/tags.hpp"
#include "guidyn/env/coords.hpp"

namespace guidyn {

std::string to_string(ParseFailure f) {
  switch (f) {
    case ParseFailure::kNone: return "none";
    case ParseFailure::kEmpty: return "empty";
    case ParseFailure::kUnknownKind: return "unknown_kind";
    case ParseFailure::kArity: return "arity";
    case ParseFailure::kBadNumber: return "bad_number";
    case ParseFailure::kOutOfRange: return "out_of_range";
    case ParseFailure::kBadDirection: return "bad_direction";
    case ParseFailure::kMalformedCot: return "malformed_cot";
  }
  return "?";
}

namespace {

ParsedAction fail(ParseFailure f, std::string message) { return {std::nullopt, f, std::move(message)}; }

struct Token {
  std::string_view text;
  std::size_t end = 0;  // offset just past the token
};

std::vector<Token> tokenize(std::string_view s, std::size_t max_tokens) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (out.size() < max_tokens) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) break;
    const std::size_t b = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    out.push_back({s.substr(b, i - b), i});
  }
  return out;
}

std::optional<long long> parse_int(std::string_view s) {
  long long v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') return std::nullopt;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec == std::errc::result_out_of_range) return std::numeric_limits<long long>::max();
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return v;
}

}  // namespace

ParsedAction parse_action(std::string_view text, CoordSpace space, ScreenDims dims) {
  const std::string body = trim(text);
  if (body.empty()) return fail(ParseFailure::kEmpty, "empty action");
  const auto tokens = tokenize(body, 4);
  const auto kind = action_kind_from_string(tokens[0].text);
  if (!kind) return fail(ParseFailure::kUnknownKind, "unknown action '" + std::string(tokens[0].text) + "'");
  const auto all = tokenize(body, static_cast<std::size_t>(-1));
  if (*kind == ActionKind::kFinish || *kind == ActionKind::kWait) {
    if (all.size() != 1) return fail(ParseFailure::kArity, "finish and wait take no arguments");
    return {*kind == ActionKind::kFinish ? Action::finish() : Action::wait(), ParseFailure::kNone, {}};
  }
  if (all.size() < 3) return fail(ParseFailure::kArity, "missing coordinates");
  const auto x = parse_int(tokens[1].text);
  const auto y = parse_int(tokens[2].text);
  if (!x || !y) return fail(ParseFailure::kBadNumber, "coordinates must be integers");
  const long long max_x = space == CoordSpace::kAbsolute ? dims.width : kNormalizedMax;
  const long long max_y = space == CoordSpace::kAbsolute ? dims.height : kNormalizedMax;
  if (*x < 0 || *y < 0 || *x > max_x || *y > max_y) {
    return fail(ParseFailure::kOutOfRange, "coordinates outside the declared space");
  }
  const Point p{static_cast<int>(*x), static_cast<int>(*y)};
  switch (*kind) {
    case ActionKind::kClick:
      if (all.size() != 3) return fail(ParseFailure::kArity, "click takes two coordinates");
      return {Action::click(p, space), ParseFailure::kNone, {}};
    case ActionKind::kInput: {
      const std::string rest = trim(body.substr(tokens[2].end));
      if (rest.empty()) return fail(ParseFailure::kArity, "input needs text");
      return {Action::input(p, rest, space), ParseFailure::kNone, {}};
    }
    case ActionKind::kScroll: {
      if (all.size() != 4) return fail(ParseFailure::kArity, "scroll takes coordinates and a direction");
      const auto dir = direction_from_string(all[3].text);
      if (!dir) return fail(ParseFailure::kBadDirection, "unknown direction '" + std::string(all[3].text) + "'");
      return {Action::scroll(p, *dir, space), ParseFailure::kNone, {}};
    }
    default: break;
  }
  return fail(ParseFailure::kUnknownKind, "unsupported action");
}

std::optional<CotOutput> parse_cot(std::string_view text) {
  const auto think = single_tag(text, "think");
  const auto sub_goal = single_tag(text, "sub_goal");
  const auto answer = single_tag(text, "answer");
  if (!think || !sub_goal || !answer) return {};
  if (!(text.find("</think>") < text.find("<sub_goal>") &&
        text.find("</sub_goal>") < text.find("<answer>"))) {
    return {};
  }
  return CotOutput{*think, *sub_goal, *answer};
}

ParsedAction parse_prediction(std::string_view text, CoordSpace space, ScreenDims dims) {
  const bool tagged = text.find("<think>") != std::string_view::npos ||
                      text.find("<sub_goal>") != std::string_view::npos ||
                      text.find("<answer>") != std::string_view::npos;
  if (!tagged) return parse_action(text, space, dims);
  const auto cot = parse_cot(text);
  if (!cot) return fail(ParseFailure::kMalformedCot, "output does not follow the tag grammar");
  return parse_action(cot->answer, space, dims);
}

Json record_to_json(const EvalRecord& r) {
  Json j;
  j["item_id"] = r.item_id;
  j["gt_action"] = action_to_json(r.gt_action);
  if (r.gt_target_bounds) {
    const Rect& b = *r.gt_target_bounds;
    j["gt_target_bounds"] = {b.x, b.y, b.w, b.h};
  } else {
    j["gt_target_bounds"] = nullptr;
  }
  j["gt_state"] = r.gt_state;
  j["prediction_text"] = r.prediction_text;
  j["coord_space"] = to_string(r.coord_space);
  j["screen"] = {r.dims.width, r.dims.height};
  return j;
}

EvalRecord record_from_json(const Json& j) {
  try {
    EvalRecord r;
    r.item_id = j.at("item_id").get<std::string>();
    r.gt_action = action_from_json(j.at("gt_action"));
    if (!j.at("gt_target_bounds").is_null()) {
      const auto b = j.at("gt_target_bounds").get<std::vector<int>>();
      if (b.size() != 4) throw DataError("gt_target_bounds needs four integers");
      r.gt_target_bounds = Rect{b[0], b[1], b[2], b[3]};
    }
    r.gt_state = j.at("gt_state").get<std::string>();
    r.prediction_text = j.at("prediction_text").get<std::string>();
    const auto space = coord_space_from_string(j.at("coord_space").get<std::string>());
    if (!space) throw DataError("unknown coord_space in record " + r.item_id);
    r.coord_space = *space;
    const auto screen = j.at("screen").get<std::vector<int>>();
    if (screen.size() != 2) throw DataError("screen needs width and height");
    r.dims = {screen[0], screen[1]};
    return r;
  } catch (const Json::exception& e) {
    throw DataError(std::string("bad eval record: ") + e.what());
  }
}

Score score(const EvalRecord& record, const ScoringParams& params) {
  const ParsedAction parsed = parse_prediction(record.prediction_text, record.coord_space, record.dims);
  Score s;
  s.failure = parsed.failure;
  if (!parsed.ok()) return s;
  const Action& pred = *parsed.action;
  const Action& gt = record.gt_action;
  s.tm = pred.kind() == gt.kind();
  if (!s.tm) return s;
  switch (gt.kind()) {
    case ActionKind::kFinish:
    case ActionKind::kWait:
      s.em = true;
      return s;
    case ActionKind::kScroll:
      s.em = pred.direction() == gt.direction();
      return s;
    default: break;
  }
  const Point pp = to_absolute_space(pred, record.dims).point();
  bool hit;
  if (params.use_bounds && record.gt_target_bounds) {
    hit = record.gt_target_bounds->contains(pp);
  } else {
    const Point gp = to_absolute_space(gt, record.dims).point();
    const double radius = params.radius_fraction * std::hypot(record.dims.width, record.dims.height);
    hit = std::hypot(pp.x - gp.x, pp.y - gp.y) <= radius;
  }
  if (gt.kind() == ActionKind::kInput) {
    hit = hit && collapse_whitespace(pred.text()) == collapse_whitespace(gt.text());
  }
  s.em = hit;
  return s;
}

Metrics evaluate(const std::vector<EvalRecord>& records, const ScoringParams& params) {
  if (records.empty()) throw DataError("cannot evaluate an empty record set");
  Metrics m;
  m.n = records.size();
  std::size_t em = 0, tm = 0, failures = 0;
  std::map<std::string, std::pair<std::size_t, std::size_t>> kind_hits;  // em, tm
  for (const auto& r : records) {
    const Score s = score(r, params);
    em += s.em;
    tm += s.tm;
    failures += s.failure != ParseFailure::kNone;
    const std::string kind = to_string(r.gt_action.kind());
    auto& km = m.per_kind[kind];
    ++km.count;
    kind_hits[kind].first += s.em;
    kind_hits[kind].second += s.tm;
  }
  const double n = static_cast<double>(m.n);
  m.em = static_cast<double>(em) / n;
  m.tm = static_cast<double>(tm) / n;
  m.parse_failure_rate = static_cast<double>(failures) / n;
  for (auto& [kind, km] : m.per_kind) {
    km.em = static_cast<double>(kind_hits[kind].first) / static_cast<double>(km.count);
    km.tm = static_cast<double>(kind_hits[kind].second) / static_cast<double>(km.count);
  }
  return m;
}

Json metrics_to_json(const Metrics& m) {
  Json j;
  j["n"] = m.n;
  j["em"] = m.em;
  j["tm"] = m.tm;
  j["parse_failure_rate"] = m.parse_failure_rate;
  Json kinds = Json::object();
  for (const auto& [kind, km] : m.per_kind) {
    kinds[kind] = {{"count", km.count}, {"em", km.em}, {"tm", km.tm}};
  }
  j["per_kind"] = std::move(kinds);
  return j;
}

double aggregate_judged(const std::vector<std::string>& judge_outputs, JudgeTask task) {
  if (judge_outputs.empty()) throw DataError("no judged items to aggregate");
  double total = 0.0;
  for (std::size_t i = 0; i < judge_outputs.size(); ++i) {
    try {
      total += parse_judge_verdict(judge_outputs[i], task).score;
    } catch (const DataError& e) {
      throw DataError("judge verdict " + std::to_string(i) + " unparsed: " + e.what());
    }
  }
  return total / static_cast<double>(judge_outputs.size());
}

}  // namespace guidyn
