#pragma once

#include <vector>

#include "cyberops/env/types.hpp"

namespace cyberops::agents {

// Episode history as seen before acting at the current step: one entry per
// completed step, oldest first.
struct HistoryWindow {
  std::vector<env::Action> actions;
  std::vector<double> rewards;
};

struct Dilemma {
  bool repeated_action = false;  // the last three actions were identical
  bool flat_reward = false;      // no reward progress across the last five steps
  std::vector<env::Action> suspicious;

  bool any() const { return repeated_action || flat_reward; }
};

// Flags a stuck agent. A repeat needs three completed steps; the flat-reward
// check needs six, comparing the newest reward against the one five steps
// earlier. Suspicious actions are the repeat offender plus, when reward is
// flat, every distinct action played in that stagnant stretch.
Dilemma detect_dilemma(const HistoryWindow& history);

}  // namespace cyberops::agents
