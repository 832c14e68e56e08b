#include "cyberops/agents/reflection.hpp"

#include <algorithm>

namespace cyberops::agents {

Dilemma detect_dilemma(const HistoryWindow& history) {
  Dilemma d;
  const std::size_t t = history.actions.size();

  if (t >= 3 && history.actions[t - 1] == history.actions[t - 2] &&
      history.actions[t - 2] == history.actions[t - 3]) {
    d.repeated_action = true;
    d.suspicious.push_back(history.actions[t - 1]);
  }

  if (t >= 6 && history.rewards.size() == t &&
      history.rewards[t - 1] - history.rewards[t - 6] <= 0.0) {
    d.flat_reward = true;
    for (std::size_t i = t - 5; i < t; ++i) {
      const auto& a = history.actions[i];
      if (std::find(d.suspicious.begin(), d.suspicious.end(), a) == d.suspicious.end())
        d.suspicious.push_back(a);
    }
  }

  return d;
}

}  // namespace cyberops::agents
