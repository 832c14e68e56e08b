#include "cyberops/env/adversaries.hpp"

#include <algorithm>
#include <deque>

namespace cyberops::env {

Action scripted_blue(const Observation& observation, Rng& rng) {
  std::vector<int> suspicious;
  for (std::size_t h = 0; h < observation.activity.size(); ++h)
    if (observation.activity[h]) suspicious.push_back(static_cast<int>(h));
  if (suspicious.empty()) return {Team::Blue, Verb::Monitor, kNoTarget};
  const int host = rng.pick(suspicious);
  const Verb verb = rng.uniform_int(0, 1) == 0 ? Verb::Remove : Verb::Restore;
  return {Team::Blue, verb, host};
}

std::vector<int> breadth_first_order(const Scenario& scenario) {
  const int H = scenario.host_count();
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(H));
  std::vector<bool> seen(static_cast<std::size_t>(H), false);
  std::deque<int> queue{scenario.foot};
  seen[static_cast<std::size_t>(scenario.foot)] = true;
  while (!queue.empty()) {
    const int h = queue.front();
    queue.pop_front();
    order.push_back(h);
    for (const int g : scenario.neighbors[static_cast<std::size_t>(h)]) {
      if (!seen[static_cast<std::size_t>(g)]) {
        seen[static_cast<std::size_t>(g)] = true;
        queue.push_back(g);
      }
    }
  }
  for (int h = 0; h < H; ++h)
    if (!seen[static_cast<std::size_t>(h)]) order.push_back(h);
  return order;
}

Action scripted_red(const NetworkState& state) {
  const auto legal = legal_actions(state, Team::Red);
  if (legal.size() == 1 && legal[0].verb == Verb::Sleep) return legal[0];

  // A verb advances a host only when the believed status sits exactly at the
  // verb's entry level; anything else is a re-attempt on a possibly stale map.
  const auto advances = [&](const Action& a) {
    const auto believed = state.red_belief[static_cast<std::size_t>(a.target)];
    switch (a.verb) {
      case Verb::Discover: return believed == AccessLevel::Unknown;
      case Verb::Exploit: return believed == AccessLevel::Known;
      case Verb::Escalate: return believed == AccessLevel::Exploited;
      default: return false;
    }
  };

  const auto pick = [&](bool advancing_only) -> const Action* {
    for (const int host : breadth_first_order(*state.scenario)) {
      const Action* best = nullptr;
      for (const Action& a : legal) {
        if (a.target != host) continue;
        if (advancing_only && !advances(a)) continue;
        if (best == nullptr || static_cast<int>(a.verb) < static_cast<int>(best->verb))
          best = &a;
      }
      if (best != nullptr) return best;
    }
    return nullptr;
  };

  // Prefer progress; fall back to a stale re-attempt, which at least reveals
  // the target's true status and unsticks the map.
  if (const Action* a = pick(true)) return *a;
  if (const Action* a = pick(false)) return *a;
  return {Team::Red, Verb::Sleep, kNoTarget};
}

}  // namespace cyberops::env
