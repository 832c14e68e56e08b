#pragma once

#include <map>
#include <string>
#include <vector>

#include "cyberops/mentors/policy.hpp"

namespace cyberops::mentors {

struct TrainConfig {
  int episodes = 2000;
  int max_steps = 100;
  double learning_rate = 0.5;   // measured best for the tabular learner on the
                                // default scenario; shared by both algorithms
  double discount = 0.95;
  double epsilon_start = 1.0;   // exploration decays linearly over the first
  double epsilon_end = 0.05;    // half of training, then stays at the floor
  std::uint64_t seed = 0;

  bool operator==(const TrainConfig&) const = default;
};

struct Transition {
  std::string state;
  int action = 0;  // canonical ordinal
  double reward = 0.0;
  std::string next_state;
};

// One tabular Bellman update:
//   Q(s,a) += lr * (r + discount * max_a' Q(s',a') - Q(s,a)).
// Rows materialize on first touch, zero-filled. Preconditions: lr in (0,1],
// discount in [0,1], ordinal within the mapping.
void q_update(std::map<std::string, std::vector<double>>& table, const Transition& transition,
              double learning_rate, double discount, int action_count);

struct TrainResult {
  PolicyArtifact artifact;
  std::vector<double> curve;  // mean episode reward per 100-episode window
};

// Trains a policy for the given team against the fixed opposite-team
// strategy. Deterministic for a fixed config. Throws ConfigError on invalid
// hyperparameters (episodes < 1, rates out of range).
TrainResult train_mentor(Algorithm algorithm, const env::ScenarioConfig& scenario,
                         const TrainConfig& config, env::Team team);

// Mean cumulative episode reward of the greedy policy over the given seeds,
// playing against the fixed opposite-team strategy.
double evaluate_policy(const PolicyArtifact& artifact, const std::vector<std::uint64_t>& seeds,
                       int max_steps);

// Same rollout with uniformly random legal actions; baseline for comparisons.
double evaluate_random(env::Team team, const env::ScenarioConfig& scenario,
                       const std::vector<std::uint64_t>& seeds, int max_steps);

}  // namespace cyberops::mentors
