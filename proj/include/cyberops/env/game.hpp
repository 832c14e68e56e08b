#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "cyberops/common/rng.hpp"
#include "cyberops/env/scenario.hpp"
#include "cyberops/env/types.hpp"

namespace cyberops::env {

// What one team perceives: its own last action's outcome, per-host adversary
// activity flags, and per-host statuses as that team last learned them.
struct Observation {
  int success = 1;  // 1 before any action has been taken
  std::vector<int> activity;
  std::vector<AccessLevel> status;

  // Flat numeric form, dimension 1 + 2H: success bit, activity flags, then
  // statuses scaled to {0, 1/3, 2/3, 1}.
  std::vector<double> to_vector() const;

  // Quantized digits ('0'..'3' per entry); collision-free value-table key.
  std::string state_key() const;

  int dimension() const { return 1 + 2 * static_cast<int>(activity.size()); }

  bool operator==(const Observation&) const = default;
};

struct NetworkState {
  std::shared_ptr<const Scenario> scenario;
  std::vector<AccessLevel> truth;       // ground-truth status per host
  std::vector<AccessLevel> red_belief;  // statuses as red last learned them
  std::vector<bool> red_alert;          // defender interference noticed by red
  std::vector<AccessLevel> blue_view;   // statuses as blue last captured them
  std::vector<bool> blue_alert;         // activity flags from blue's last Monitor
  std::vector<bool> pending;            // red activity since blue's last Monitor
  bool red_last_success = true;
  bool blue_last_success = true;
  int step = 0;
  Rng rng;  // drives the scripted blue adversary; reseed per episode
};

struct StepOutcome {
  double red_reward = 0.0;
  double blue_reward = 0.0;  // exact negation of red_reward
  bool red_success = false;
  bool blue_success = false;
  bool red_rejected = false;  // malformed action, dropped before resolution
  bool blue_rejected = false;
  Observation red_observation;
  Observation blue_observation;
};

NetworkState build_scenario(const ScenarioConfig& config);
NetworkState build_scenario(std::shared_ptr<const Scenario> scenario);

// Sum over hosts of value * access weight of the true status.
double compute_reward(const NetworkState& state);

// Legality from an explicit per-host status view. Red: Discover unknown hosts
// next to a privileged one, Exploit at-least-known hosts next to an
// exploited-or-better one, Escalate exploited hosts; empty set collapses to
// {Sleep}. Blue: always Monitor plus Remove/Restore on every host. Shared by
// the simulator (belief maps) and by policies (decoded observations).
std::vector<Action> legal_actions_for_view(const Scenario& scenario, Team team,
                                           const std::vector<AccessLevel>& view);
std::vector<Action> legal_actions(const NetworkState& state, Team team);

// Resolves red first against the true state, then blue; computes the zero-sum
// reward on the post-step state and advances the step counter by one. Failed
// actions teach the actor the target's true status; malformed actions are
// rejected no-ops flagged in the outcome.
std::pair<NetworkState, StepOutcome> apply_step(NetworkState state, const Action& red,
                                                const Action& blue);

Observation observe(const NetworkState& state, Team team);

}  // namespace cyberops::env
