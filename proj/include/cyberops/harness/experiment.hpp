#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cyberops/agents/prompts.hpp"
#include "cyberops/collab/caller.hpp"
#include "cyberops/collab/cursor.hpp"
#include "cyberops/env/game.hpp"
#include "cyberops/env/scenario.hpp"
#include "cyberops/harness/report.hpp"
#include "cyberops/harness/trace.hpp"
#include "cyberops/llm/gateway.hpp"
#include "cyberops/llm/http_gateway.hpp"

namespace cyberops::harness {

struct MentorRef {
  std::string path;  // policy artifact file

  bool operator==(const MentorRef&) const = default;
};

struct ExperimentConfig {
  ExperimentGroup group = ExperimentGroup::Independent;
  env::Team team = env::Team::Red;
  std::string scenario_path;  // empty: built-in default scenario
  std::vector<MentorRef> mentors;
  std::string backend = "scripted";  // "scripted" or "remote"
  llm::HttpGatewayConfig remote;     // used when backend == "remote"
  collab::CursorConfig cursor;
  int episode_length = 100;
  int runs = 5;
  std::vector<std::uint64_t> seeds;  // empty: 1..runs
  int split_step = 53;
  double smoothing = 0.9;
  double confidence = 0.95;
  int workers = 1;
  std::string prompts_dir;  // empty: built-in templates
  std::string out_dir;

  bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_experiment_config(const std::string& text);
std::string serialize_experiment_config(const ExperimentConfig& config);
ExperimentConfig load_experiment_config(const std::string& path);
void save_experiment_config(const std::string& path, const ExperimentConfig& config);

// Throws ConfigError on an inconsistent configuration (mentor count vs group,
// duplicate seeds, out-of-range knobs, unknown backend).
void validate_experiment_config(const ExperimentConfig& config);

// Resolved run seeds: the configured list, or 1..runs when none given.
std::vector<std::uint64_t> experiment_seeds(const ExperimentConfig& config);

// A loaded, validated experiment. run_episode is deterministic per seed with
// the scripted backend; run() executes every configured run (failed runs are
// logged and the report flagged partial) and writes config, traces, the CSV,
// and the JSON report under out_dir when one is set.
class Experiment {
 public:
  explicit Experiment(ExperimentConfig config);

  const ExperimentConfig& config() const { return config_; }
  const env::Scenario& scenario() const { return *scenario_; }
  const collab::MentorPool& pool() const { return pool_; }

  EpisodeTrace run_episode(std::uint64_t seed) const;
  MetricsReport run() const;

 private:
  ExperimentConfig config_;
  std::shared_ptr<const env::Scenario> scenario_;
  collab::MentorPool pool_;
  agents::PromptLibrary prompts_;
  std::unique_ptr<llm::CompletionGateway> gateway_;
};

}  // namespace cyberops::harness
