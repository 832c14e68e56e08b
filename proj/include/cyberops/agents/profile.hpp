#pragma once

#include <string>
#include <vector>

#include "cyberops/agents/prompts.hpp"
#include "cyberops/env/types.hpp"
#include "cyberops/llm/gateway.hpp"

namespace cyberops::agents {

// One line of the behavior profile: when a verb is worth playing and what
// should come of it.
struct GuidelineEntry {
  env::Verb verb = env::Verb::Sleep;
  std::string goal;
  std::string trigger;
  std::string following;
  std::string outcome;

  bool operator==(const GuidelineEntry&) const = default;
};

// The agent's standing orders for an episode: role, objective, and a ranked
// verb playbook. Entry order doubles as the verb preference used to sort the
// action space.
struct BehaviorGuideline {
  env::Team role = env::Team::Red;
  std::string goal;
  std::string environment_format;
  std::vector<GuidelineEntry> entries;

  // Position of the verb in the playbook; verbs it never mentions rank after
  // all mentioned ones, in declaration order, so sorting stays total.
  int verb_rank(env::Verb verb) const;

  // Rendered as the system prompt for decision calls.
  std::string to_text() const;

  bool operator==(const BehaviorGuideline&) const = default;
};

// Parses "N. action: Verb; goal: ...; trigger: ...; following: ...;
// outcome: ..." lines. Lines that do not parse, or that name a verb the team
// cannot play, are dropped.
std::vector<GuidelineEntry> parse_guideline_text(const std::string& text, env::Team team);

BehaviorGuideline default_guideline(env::Team team);

// Asks the language backend for a playbook; one retry on an unparseable
// reply, then the built-in default with a warning. Gateway transport errors
// also fall back rather than aborting the episode.
BehaviorGuideline init_profile(env::Team team, llm::CompletionGateway& gateway,
                               const PromptLibrary& prompts);

}  // namespace cyberops::agents
