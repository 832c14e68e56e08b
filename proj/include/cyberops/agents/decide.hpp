#pragma once

#include <string>
#include <vector>

#include "cyberops/agents/memory.hpp"
#include "cyberops/agents/profile.hpp"
#include "cyberops/agents/prompts.hpp"
#include "cyberops/env/game.hpp"
#include "cyberops/env/scenario.hpp"
#include "cyberops/llm/gateway.hpp"
#include "cyberops/mentors/policy.hpp"

namespace cyberops::agents {

// Everything the decision step sees. Suggestions must already be filtered to
// the offered action space; the space must be non-empty.
struct DecisionContext {
  env::Team team = env::Team::Red;
  int step = 0;
  env::Observation observation;
  double reward_delta = 0.0;
  std::vector<MemoryRecord> memories;
  const BehaviorGuideline* guideline = nullptr;
  std::vector<mentors::Suggestion> suggestions;
  std::vector<env::Action> action_space;
  bool dilemma = false;
  std::vector<env::Action> suspicious;
  const env::Scenario* scenario = nullptr;
};

struct DecisionOutcome {
  env::Action action;
  bool accepted = false;  // chosen action matches a shown suggestion
  std::string prompt;     // final user prompt sent (includes any reminder)
  std::string raw_reply;
  // 0 = first reply parsed, 1 = reminder retry parsed, 2 = deterministic
  // fallback to the lowest-numbered action in the space.
  int fallback_level = 0;
};

// Plays one decision through the language backend: prompt, parse, one
// reminder retry, then a deterministic fallback. Transport errors propagate.
DecisionOutcome decide(const DecisionContext& context, llm::CompletionGateway& gateway,
                       const PromptLibrary& prompts);

}  // namespace cyberops::agents
