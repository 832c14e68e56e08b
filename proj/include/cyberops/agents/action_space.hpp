#pragma once

#include <vector>

#include "cyberops/agents/profile.hpp"
#include "cyberops/env/types.hpp"

namespace cyberops::agents {

// The action list shown to the language backend: legal actions minus the
// current exclusions, ordered by the playbook's verb preference, then host.
// If exclusions would empty the list, they are ignored and the full legal
// list comes back, so the agent always has a move.
std::vector<env::Action> build_action_space(const BehaviorGuideline& guideline,
                                            const std::vector<env::Action>& legal,
                                            const std::vector<env::Action>& exclusions,
                                            int host_count);

}  // namespace cyberops::agents
