#include "cyberops/agents/action_space.hpp"

#include <algorithm>

namespace cyberops::agents {

std::vector<env::Action> build_action_space(const BehaviorGuideline& guideline,
                                            const std::vector<env::Action>& legal,
                                            const std::vector<env::Action>& exclusions,
                                            int host_count) {
  std::vector<env::Action> space;
  space.reserve(legal.size());
  for (const auto& a : legal)
    if (std::find(exclusions.begin(), exclusions.end(), a) == exclusions.end())
      space.push_back(a);
  if (space.empty()) space = legal;

  std::stable_sort(space.begin(), space.end(),
                   [&](const env::Action& a, const env::Action& b) {
                     const int ra = guideline.verb_rank(a.verb);
                     const int rb = guideline.verb_rank(b.verb);
                     if (ra != rb) return ra < rb;
                     if (a.target != b.target) return a.target < b.target;
                     return env::action_ordinal(a, host_count) <
                            env::action_ordinal(b, host_count);
                   });
  return space;
}

}  // namespace cyberops::agents
