#include <CLI11.hpp>
#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "cyberops/common/errors.hpp"
#include "cyberops/common/rng.hpp"
#include "cyberops/env/adversaries.hpp"
#include "cyberops/env/game.hpp"
#include "cyberops/env/scenario.hpp"
#include "cyberops/harness/experiment.hpp"
#include "cyberops/harness/report.hpp"
#include "cyberops/harness/trace.hpp"
#include "cyberops/llm/gateway.hpp"
#include "cyberops/mentors/policy.hpp"
#include "cyberops/mentors/training.hpp"
#include "cyberops/common/text.hpp"
#include "cyberops/version.hpp"

using namespace cyberops;

namespace {

env::ScenarioConfig scenario_or_default(const std::string& path) {
  return path.empty() ? env::default_scenario_config() : env::load_scenario(path);
}

std::string seed_list(const std::vector<std::uint64_t>& seeds) {
  std::string out;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(seeds[i]);
  }
  return out;
}

void print_rates(const char* segment, const harness::SummaryRates& rates) {
  const auto cell = [](const std::optional<double>& v) {
    return v ? format_double(*v) : std::string("-");
  };
  std::cout << "  " << segment << ": collaboration " << cell(rates.collaboration_rate)
            << ", dilemma " << cell(rates.dilemma_rate) << ", accept "
            << cell(rates.accept_rate) << ", dilemma accept "
            << cell(rates.dilemma_accept_rate) << "\n";
}

void print_report_summary(const harness::MetricsReport& report) {
  std::cout << "group " << harness::to_string(report.group) << ", team "
            << env::to_string(report.team) << ", " << report.seeds.size() << " run(s), seeds "
            << seed_list(report.seeds) << (report.partial ? " (partial)" : "") << "\n";
  if (!report.steps.empty())
    std::cout << "final mean cumulative reward: "
              << format_double(report.steps.back().mean_cumulative_reward) << "\n";
  std::cout << "collaboration summary (early < step " << report.split_step << "):\n";
  print_rates("early", report.summary.early);
  print_rates("later", report.summary.later);
  print_rates("overall", report.summary.overall);
}

int run_train(const std::string& algorithm_name, const std::string& team_name,
              const std::string& scenario_path, const mentors::TrainConfig& tc,
              const std::string& mentor_id, const std::string& out_path) {
  const auto team = env::team_from_string(team_name);
  if (!team) throw ConfigError("unknown team: " + team_name);
  mentors::Algorithm algorithm;
  if (algorithm_name == "q_learning") {
    algorithm = mentors::Algorithm::QLearning;
  } else if (algorithm_name == "policy_gradient") {
    algorithm = mentors::Algorithm::PolicyGradient;
  } else {
    throw ConfigError("unknown algorithm: " + algorithm_name);
  }

  const auto scenario = scenario_or_default(scenario_path);
  std::cout << "training " << algorithm_name << " for team " << team_name << ", "
            << tc.episodes << " episode(s), seed " << tc.seed << "\n";
  auto result = mentors::train_mentor(algorithm, scenario, tc, *team);
  if (!mentor_id.empty()) result.artifact.meta.mentor_id = mentor_id;
  for (std::size_t w = 0; w < result.curve.size(); ++w) {
    const std::size_t first = w * 100;
    const std::size_t last =
        std::min<std::size_t>(first + 99, static_cast<std::size_t>(tc.episodes) - 1);
    std::cout << "episodes " << first << "-" << last
              << ": mean reward " << format_double(result.curve[w]) << "\n";
  }
  mentors::save_policy(result.artifact, out_path);
  std::cout << "saved policy " << result.artifact.meta.mentor_id << " to " << out_path << "\n";
  return 0;
}

int run_play(const std::string& team_name, const std::string& scenario_path,
             const std::string& policy_path, std::uint64_t seed, int steps) {
  auto team = env::team_from_string(team_name);
  if (!team) throw ConfigError("unknown team: " + team_name);
  if (steps < 1) throw ConfigError("steps must be at least 1");

  std::optional<mentors::PolicyArtifact> policy;
  const auto scenario_config = scenario_or_default(scenario_path);
  auto scenario = std::make_shared<const env::Scenario>(env::compile_scenario(scenario_config));
  if (!policy_path.empty()) {
    policy = mentors::load_policy(policy_path);
    mentors::verify_scenario(*policy, *scenario);
    team = policy->team;
  }

  auto state = env::build_scenario(scenario);
  state.rng = Rng(Rng::mix(seed, 0x9e3779b97f4a7c15ULL));
  Rng fallback_rng(Rng::mix(seed, 0xbadcafe));
  double total = 0.0;
  std::cout << "playing " << (policy ? "policy " + policy->meta.mentor_id : "scripted strategy")
            << " as " << env::to_string(*team) << ", seed " << seed << "\n";
  for (int t = 0; t < steps; ++t) {
    env::Action mine;
    if (policy) {
      mine = policy->suggest(env::observe(state, *team), 1).front().action;
    } else if (*team == env::Team::Red) {
      mine = env::scripted_red(state);
    } else {
      mine = env::scripted_blue(env::observe(state, env::Team::Blue), fallback_rng);
    }
    const env::Action other =
        *team == env::Team::Red
            ? env::scripted_blue(env::observe(state, env::Team::Blue), state.rng)
            : env::scripted_red(state);
    auto [next, outcome] =
        env::apply_step(std::move(state), *team == env::Team::Red ? mine : other,
                        *team == env::Team::Blue ? mine : other);
    state = std::move(next);
    const double reward =
        *team == env::Team::Red ? outcome.red_reward : outcome.blue_reward;
    const bool ok = *team == env::Team::Red ? outcome.red_success : outcome.blue_success;
    total += reward;
    std::cout << "step " << t << ": " << scenario->action_name(mine) << (ok ? " ok" : " failed")
              << ", reward " << format_double(reward) << ", total " << format_double(total)
              << "\n";
  }
  std::cout << "cumulative reward: " << format_double(total) << "\n";
  return 0;
}

int run_experiment(const std::string& config_path, const std::string& out_override,
                   int workers_override) {
  auto config = harness::load_experiment_config(config_path);
  if (!out_override.empty()) config.out_dir = out_override;
  if (workers_override > 0) config.workers = workers_override;
  harness::Experiment experiment(std::move(config));
  std::cout << "running " << experiment.config().runs << " run(s), seeds "
            << seed_list(harness::experiment_seeds(experiment.config())) << ", backend "
            << experiment.config().backend << "\n";
  const auto report = experiment.run();
  print_report_summary(report);
  if (!experiment.config().out_dir.empty())
    std::cout << "wrote " << experiment.config().out_dir << "/report.csv, report.json, config.json"
              << " and traces/\n";
  return 0;
}

int run_report(const std::string& dir) {
  namespace fs = std::filesystem;
  const auto config = harness::load_experiment_config((fs::path(dir) / "config.json").string());
  const fs::path traces_dir = fs::path(dir) / "traces";
  if (!fs::is_directory(traces_dir)) throw IoError("no traces directory in " + dir);
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(traces_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl")
      names.push_back(entry.path().string());
  std::sort(names.begin(), names.end());
  std::vector<harness::EpisodeTrace> traces;
  traces.reserve(names.size());
  for (const auto& name : names) traces.push_back(harness::read_trace(name));

  const auto report = harness::build_report(
      config.group, config.team, harness::experiment_seeds(config), traces,
      config.episode_length, config.split_step, config.smoothing, config.confidence);
  write_text_file((fs::path(dir) / "report.csv").string(), harness::report_to_csv(report));
  write_text_file((fs::path(dir) / "report.json").string(),
                  harness::report_to_json_text(report));
  print_report_summary(report);
  std::cout << "rebuilt " << dir << "/report.csv and report.json from " << traces.size()
            << " trace(s)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adversarial network game harness: mentor training, episodes, experiments"};
  app.set_version_flag("--version", std::string("cyberops ") + cyberops::kVersion);
  app.require_subcommand(1);

  auto* train = app.add_subcommand("train", "Train a mentor policy and save it");
  std::string algorithm = "q_learning";
  std::string team_name = "red";
  std::string scenario_path;
  std::string mentor_id;
  std::string out_path;
  mentors::TrainConfig train_config;
  train->add_option("--algorithm", algorithm, "q_learning or policy_gradient")
      ->capture_default_str();
  train->add_option("--team", team_name, "red or blue")->capture_default_str();
  train->add_option("--scenario", scenario_path, "scenario json (default: built-in)");
  train->add_option("--episodes", train_config.episodes)->capture_default_str();
  train->add_option("--max-steps", train_config.max_steps)->capture_default_str();
  train->add_option("--lr", train_config.learning_rate)->capture_default_str();
  train->add_option("--discount", train_config.discount)->capture_default_str();
  train->add_option("--epsilon-start", train_config.epsilon_start)->capture_default_str();
  train->add_option("--epsilon-end", train_config.epsilon_end)->capture_default_str();
  train->add_option("--seed", train_config.seed)->capture_default_str();
  train->add_option("--mentor-id", mentor_id, "identifier stored in the artifact");
  train->add_option("--out", out_path, "output policy file")->required();

  auto* play = app.add_subcommand("play", "Play one episode and print every step");
  std::string play_team = "red";
  std::string play_scenario;
  std::string policy_path;
  std::uint64_t play_seed = 1;
  int play_steps = 100;
  play->add_option("--team", play_team, "red or blue (ignored with --policy)")
      ->capture_default_str();
  play->add_option("--scenario", play_scenario, "scenario json (default: built-in)");
  play->add_option("--policy", policy_path, "policy artifact; omit for the scripted strategy");
  play->add_option("--seed", play_seed)->capture_default_str();
  play->add_option("--steps", play_steps)->capture_default_str();

  auto* experiment = app.add_subcommand("experiment", "Run a configured experiment");
  std::string experiment_config_path;
  std::string out_override;
  int workers_override = 0;
  experiment->add_option("--config", experiment_config_path, "experiment config json")
      ->required();
  experiment->add_option("--out", out_override, "override the configured output directory");
  experiment->add_option("--workers", workers_override, "override the configured worker count");

  auto* report = app.add_subcommand("report", "Rebuild reports from exported traces");
  std::string report_dir;
  report->add_option("--dir", report_dir, "experiment output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: cli: " << e.what() << "\n";
    return 2;
  }

  try {
    if (train->parsed())
      return run_train(algorithm, team_name, scenario_path, train_config, mentor_id, out_path);
    if (play->parsed())
      return run_play(play_team, play_scenario, policy_path, play_seed, play_steps);
    if (experiment->parsed())
      return run_experiment(experiment_config_path, out_override, workers_override);
    if (report->parsed()) return run_report(report_dir);
  } catch (const cyberops::IoError& err) {
    std::cerr << "error: io: " << err.what() << "\n";
    return 3;
  } catch (const cyberops::llm::GatewayError& err) {
    std::cerr << "error: gateway: " << err.what() << "\n";
    return 5;
  } catch (const cyberops::ConfigError& err) {
    std::cerr << "error: config: " << err.what() << "\n";
    return 4;
  } catch (const cyberops::ArtifactError& err) {
    std::cerr << "error: artifact: " << err.what() << "\n";
    return 4;
  } catch (const std::exception& err) {
    std::cerr << "error: internal: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
