#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cyberops/env/types.hpp"

namespace cyberops::harness {

// A mentor suggestion as it was shown to the decision step.
struct ShownSuggestion {
  std::string mentor_id;
  std::string action;
  double confidence = 0.0;

  bool operator==(const ShownSuggestion&) const = default;
};

// Everything recorded about one step of one episode.
struct StepRecord {
  int step = 0;
  std::vector<double> observation;
  std::string action;
  bool success = false;
  double reward = 0.0;
  bool consulted = false;
  bool dilemma = false;
  bool accepted = false;
  int fallback_level = 0;
  double independence = 0.0;
  double schedule_part = 0.0;
  double experience_part = 0.0;
  std::vector<std::string> excluded;
  std::vector<ShownSuggestion> suggestions;
  std::string prompt;
  std::string reply;

  bool operator==(const StepRecord&) const = default;
};

struct EpisodeTrace {
  std::uint64_t seed = 0;
  env::Team team = env::Team::Red;
  double cumulative_reward = 0.0;
  std::vector<StepRecord> steps;

  bool operator==(const EpisodeTrace&) const = default;
};

// JSON-lines serialization: a meta object on the first line, then one object
// per step. Writing then reading reproduces the trace exactly.
void write_trace(const std::string& path, const EpisodeTrace& trace);
EpisodeTrace read_trace(const std::string& path);

}  // namespace cyberops::harness
