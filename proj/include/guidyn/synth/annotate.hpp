#pragma once

#include <optional>
#include <string>
#include <vector>

#include "guidyn/explore/transition.hpp"
#include "guidyn/remote/client.hpp"

namespace guidyn {

// (observation, action, outcome) descriptions of one transition.
struct GroundedAnnotation {
  std::string transition_id;
  std::string obs_desc;
  std::string action_desc;
  std::string outcome_desc;

  friend bool operator==(const GroundedAnnotation&, const GroundedAnnotation&) = default;
};

// Throws DataError when a field is empty or the action description holds a coordinate pair.
void validate(const GroundedAnnotation& a);
Json annotation_to_json(const GroundedAnnotation& a);
GroundedAnnotation annotation_from_json(const Json& j);

// Natural-language action description naming the node the action lands on in `state`.
std::string describe_action(const UiState& state, const Action& action, ScreenDims dims);

class Annotator {
 public:
  virtual ~Annotator() = default;
  // Empty when the annotation could not be produced; the transition is then skipped.
  virtual std::optional<GroundedAnnotation> annotate(const Transition& t,
                                                     const GraphSet& graphs) const = 0;
  virtual std::string name() const = 0;
  virtual std::size_t max_in_flight() const { return static_cast<std::size_t>(-1); }
};

// Descriptions from the states' ground-truth labels and the targeted node.
class OfflineAnnotator final : public Annotator {
 public:
  std::optional<GroundedAnnotation> annotate(const Transition& t,
                                             const GraphSet& graphs) const override;
  std::string name() const override { return "offline"; }
};

// Request document: the marked pre screenshot and the post screenshot with the
// grounded-annotation prompt.
Json annotation_request(const Transition& t, const GraphSet& graphs);

// Parses the three tagged descriptions; empty when any is missing, repeated or empty.
std::optional<GroundedAnnotation> parse_annotation_output(const std::string& transition_id,
                                                          std::string_view output);

class RemoteAnnotator final : public Annotator {
 public:
  explicit RemoteAnnotator(RemoteConfig config) : client_(std::move(config)) {}
  std::optional<GroundedAnnotation> annotate(const Transition& t,
                                             const GraphSet& graphs) const override;
  std::string name() const override { return "remote"; }
  std::size_t max_in_flight() const override {
    return static_cast<std::size_t>(client_.config().max_in_flight);
  }

 private:
  RemoteClient client_;
};

struct AnnotationBatch {
  std::vector<GroundedAnnotation> annotations;  // corpus order, skipped ones omitted
  std::vector<std::string> skipped;             // transition ids
};

AnnotationBatch annotate_all(const std::vector<Transition>& corpus, const GraphSet& graphs,
                             const Annotator& annotator, std::size_t parallelism = 1);

}  // namespace guidyn
