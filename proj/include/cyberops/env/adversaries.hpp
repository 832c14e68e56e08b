#pragma once

#include <vector>

#include "cyberops/common/rng.hpp"
#include "cyberops/env/game.hpp"

namespace cyberops::env {

// Fixed defender strategy: when the last Monitor flagged suspicious hosts,
// pick one uniformly and uniformly choose Remove or Restore on it (the host
// draw happens first); otherwise Monitor.
Action scripted_blue(const Observation& observation, Rng& rng);

// Fixed attacker strategy: walk the network breadth-first from the foothold
// (neighbors in index order) and fully take over one host before moving to
// the next; Discover before Exploit before Escalate on the current host.
// Moves that advance the believed status take priority; when only stale
// re-attempts remain it issues one to relearn the true status. Sleeps when
// nothing is legal.
Action scripted_red(const NetworkState& state);

// Breadth-first host order from the foothold, neighbors visited in index
// order; hosts unreachable from the foothold are appended in index order.
std::vector<int> breadth_first_order(const Scenario& scenario);

}  // namespace cyberops::env
