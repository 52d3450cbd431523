#pragma once

#include <map>
#include <string>
#include <vector>

#include "guidyn/explore/transition.hpp"
#include "guidyn/remote/client.hpp"

namespace guidyn {

enum class VerdictStatus {
  kAccepted,     // valid
  kRejected,     // semantic reject
  kUnavailable,  // verifier could not be reached; quarantined
  kMalformed,    // verifier replied outside the contract; quarantined
};

std::string to_string(VerdictStatus s);
VerdictStatus verdict_status_from_string(std::string_view s);

struct Verdict {
  std::string transition_id;
  bool valid = false;
  std::string reason;
  VerdictStatus status = VerdictStatus::kRejected;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

Json verdict_to_json(const Verdict& v);
Verdict verdict_from_json(const Json& j);

class Verifier {
 public:
  virtual ~Verifier() = default;
  virtual Verdict verify(const Transition& t, const GraphSet& graphs) const = 0;
  virtual std::string name() const = 0;
  // Upper bound on concurrent verify() calls.
  virtual std::size_t max_in_flight() const { return static_cast<std::size_t>(-1); }
};

// Valid iff the edge flag is valid, the action lands on a node supporting its event, and
// the state changed.
class RuleVerifier final : public Verifier {
 public:
  Verdict verify(const Transition& t, const GraphSet& graphs) const override;
  std::string name() const override { return "rule"; }
};

// Request document sent by RemoteVerifier for `t`.
Json semantic_request(const Transition& t, const GraphSet& graphs);

// Asks a remote model whether the screen change follows from the action. The reply's
// "output" must hold <score>0</score> or <score>1</score>, optionally with a <reason>.
class RemoteVerifier final : public Verifier {
 public:
  explicit RemoteVerifier(RemoteConfig config) : client_(std::move(config)) {}
  Verdict verify(const Transition& t, const GraphSet& graphs) const override;
  std::string name() const override { return "remote"; }
  std::size_t max_in_flight() const override {
    return static_cast<std::size_t>(client_.config().max_in_flight);
  }

 private:
  RemoteClient client_;
};

// Parses a verifier output string into (valid, reason); empty optional when malformed.
std::optional<std::pair<bool, std::string>> parse_semantic_output(std::string_view output);

struct SemanticResult {
  std::vector<Transition> survivors;    // accepted, corpus order
  std::vector<Verdict> verdicts;        // one per input, corpus order
  std::vector<Transition> quarantined;  // unavailable or malformed
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t unavailable = 0;
  std::size_t malformed = 0;
  std::map<std::string, std::size_t> reject_reasons;
};

SemanticResult filter_semantic(const std::vector<Transition>& corpus, const GraphSet& graphs,
                               const Verifier& verifier, std::size_t parallelism = 1);

}  // namespace guidyn
