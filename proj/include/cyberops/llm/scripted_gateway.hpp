#pragma once

#include "cyberops/env/types.hpp"
#include "cyberops/llm/gateway.hpp"

namespace cyberops::llm {

// Offline stand-in backend: a pure function of the prompt text, so whole
// experiments replay byte-identically without any network access.
//
// It keys on the structured lines the default prompt templates emit:
//   "Action space: A | B | ..."        offered actions of a decision request
//   "Suggestions: none" or items       "Action [confidence 0.70, mentor id]"
//   "Dilemma: yes|no"                  reflection state of the step
//   "Reward delta: <number>"           for importance-rating requests
//   "Role: red|blue"                   for behavior-profile requests
//
// Decision rule: take the first suggestion that is in the offered space and
// either carries confidence >= 0.5 or arrives during a dilemma; otherwise
// prefer Escalate > Exploit > Discover (red) or Remove > Restore > Monitor
// (blue), earliest offered target first. Importance rule: round(10 * min(1,
// |reward delta| / 10)). Profile rule: a canned, parseable action sequence.
class ScriptedGateway final : public CompletionGateway {
public:
  CompletionResult complete(const CompletionRequest& request) override;
  std::string id() const override { return "scripted"; }
};

// The canned behavior-guideline reply for a role, used by the scripted
// backend and as the built-in fallback profile.
std::string canned_guideline_text(env::Team team);

}  // namespace cyberops::llm
