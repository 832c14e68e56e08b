#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cyberops/env/game.hpp"

namespace cyberops::mentors {

enum class Algorithm { QLearning, PolicyGradient };

const char* to_string(Algorithm algorithm);

struct Suggestion {
  env::Action action;
  double confidence = 0.0;
  std::string mentor_id;
  bool uniform_fallback = false;  // state never seen; confidence is uniform

  bool operator==(const Suggestion&) const = default;
};

struct PolicyMetadata {
  Algorithm algorithm = Algorithm::QLearning;
  std::string mentor_id = "q";
  std::uint64_t seed = 0;
  int episodes = 0;

  bool operator==(const PolicyMetadata&) const = default;
};

// A trained (or blank) desk-scale policy bound to one scenario and team.
// Exactly one of the two bodies is populated, per the algorithm tag:
// a state-key -> action-value table, or a per-action feature weight matrix.
struct PolicyArtifact {
  PolicyMetadata meta;
  env::Team team = env::Team::Red;
  std::shared_ptr<const env::Scenario> scenario;
  std::map<std::string, std::vector<double>> values;  // Q body, keyed rows
  std::vector<std::vector<double>> weights;           // gradient body [action][feature]

  // Softmax (temperature 1) confidences over the actions legal in the given
  // observation, sorted by descending confidence with ordinal tie-break,
  // truncated to at most k entries. Confidences over the legal set sum to 1.
  std::vector<Suggestion> suggest(const env::Observation& observation, int k) const;

  int action_count() const;
  int feature_count() const;  // observation dimension plus a bias term
};

// Feature vector used by the linear policy: observation entries plus bias 1.
std::vector<double> policy_features(const env::Observation& observation);

PolicyArtifact make_blank_policy(Algorithm algorithm, env::Team team,
                                 std::shared_ptr<const env::Scenario> scenario);

// Versioned JSON container. Suggestions from a reloaded artifact are
// bit-identical to the original's.
void save_policy(const PolicyArtifact& artifact, const std::string& path);
PolicyArtifact load_policy(const std::string& path);
PolicyArtifact persist_roundtrip(const PolicyArtifact& artifact, const std::string& path);

// Throws ArtifactError when the artifact was trained for a structurally
// different scenario.
void verify_scenario(const PolicyArtifact& artifact, const env::Scenario& scenario);

}  // namespace cyberops::mentors
