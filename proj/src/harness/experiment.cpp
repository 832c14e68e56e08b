#include "cyberops/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <set>
#include <thread>

#include "cyberops/agents/action_space.hpp"
#include "cyberops/agents/decide.hpp"
#include "cyberops/agents/memory.hpp"
#include "cyberops/agents/profile.hpp"
#include "cyberops/agents/reflection.hpp"
#include "cyberops/common/errors.hpp"
#include "cyberops/common/log.hpp"
#include "cyberops/common/rng.hpp"
#include "cyberops/common/text.hpp"
#include "cyberops/env/adversaries.hpp"
#include "cyberops/llm/scripted_gateway.hpp"
#include "cyberops/mentors/policy.hpp"

namespace cyberops::harness {

using nlohmann::json;

namespace {

// Stream tag separating the environment's dice from everything seeded per run.
constexpr std::uint64_t kEnvStream = 0x9e3779b97f4a7c15ULL;

json cursor_to_json(const collab::CursorConfig& c) {
  return json{{"consult_threshold", c.consult_threshold},
              {"min_reward_gain", c.min_reward_gain},
              {"change_rate", c.change_rate},
              {"slope", c.slope},
              {"initial_independence", c.initial_independence},
              {"convention",
               c.convention == collab::SignConvention::Balancing ? "balancing" : "reinforcing"}};
}

collab::CursorConfig cursor_from_json(const json& j) {
  collab::CursorConfig c;
  c.consult_threshold = j.value("consult_threshold", c.consult_threshold);
  c.min_reward_gain = j.value("min_reward_gain", c.min_reward_gain);
  c.change_rate = j.value("change_rate", c.change_rate);
  c.slope = j.value("slope", c.slope);
  c.initial_independence = j.value("initial_independence", c.initial_independence);
  const std::string convention = to_lower(j.value("convention", "balancing"));
  if (convention == "balancing") {
    c.convention = collab::SignConvention::Balancing;
  } else if (convention == "reinforcing") {
    c.convention = collab::SignConvention::Reinforcing;
  } else {
    throw ConfigError("unknown cursor convention: " + convention);
  }
  return c;
}

json remote_to_json(const llm::HttpGatewayConfig& r) {
  return json{{"base_url", r.base_url},
              {"path", r.path},
              {"model", r.model},
              {"credential_env", r.credential_env},
              {"timeout_ms", r.timeout_ms},
              {"max_retries", r.max_retries},
              {"backoff_base_ms", r.backoff_base_ms},
              {"max_in_flight", r.max_in_flight},
              {"requests_per_minute", r.requests_per_minute}};
}

llm::HttpGatewayConfig remote_from_json(const json& j) {
  llm::HttpGatewayConfig r;
  r.base_url = j.value("base_url", r.base_url);
  r.path = j.value("path", r.path);
  r.model = j.value("model", r.model);
  r.credential_env = j.value("credential_env", r.credential_env);
  r.timeout_ms = j.value("timeout_ms", r.timeout_ms);
  r.max_retries = j.value("max_retries", r.max_retries);
  r.backoff_base_ms = j.value("backoff_base_ms", r.backoff_base_ms);
  r.max_in_flight = j.value("max_in_flight", r.max_in_flight);
  r.requests_per_minute = j.value("requests_per_minute", r.requests_per_minute);
  return r;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& err) {
    throw ConfigError(std::string("bad experiment config json: ") + err.what());
  }
  try {
    ExperimentConfig c;
    const auto group = group_from_string(j.at("group").get<std::string>());
    if (!group) throw ConfigError("unknown experiment group");
    c.group = *group;
    const auto team = env::team_from_string(j.at("team").get<std::string>());
    if (!team) throw ConfigError("unknown team");
    c.team = *team;
    c.scenario_path = j.value("scenario", "");
    if (j.contains("mentors"))
      for (const auto& m : j.at("mentors")) c.mentors.push_back({m.get<std::string>()});
    c.backend = j.value("backend", c.backend);
    if (j.contains("remote")) c.remote = remote_from_json(j.at("remote"));
    if (j.contains("cursor")) c.cursor = cursor_from_json(j.at("cursor"));
    c.episode_length = j.value("episode_length", c.episode_length);
    c.runs = j.value("runs", c.runs);
    if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    c.split_step = j.value("split_step", c.split_step);
    c.smoothing = j.value("smoothing", c.smoothing);
    c.confidence = j.value("confidence", c.confidence);
    c.workers = j.value("workers", c.workers);
    c.prompts_dir = j.value("prompts_dir", "");
    c.out_dir = j.value("out_dir", "");
    return c;
  } catch (const json::exception& err) {
    throw ConfigError(std::string("bad experiment config field: ") + err.what());
  }
}

std::string serialize_experiment_config(const ExperimentConfig& c) {
  json mentors = json::array();
  for (const auto& m : c.mentors) mentors.push_back(m.path);
  const json j = {{"group", to_string(c.group)},
                  {"team", env::to_string(c.team)},
                  {"scenario", c.scenario_path},
                  {"mentors", mentors},
                  {"backend", c.backend},
                  {"remote", remote_to_json(c.remote)},
                  {"cursor", cursor_to_json(c.cursor)},
                  {"episode_length", c.episode_length},
                  {"runs", c.runs},
                  {"seeds", c.seeds},
                  {"split_step", c.split_step},
                  {"smoothing", c.smoothing},
                  {"confidence", c.confidence},
                  {"workers", c.workers},
                  {"prompts_dir", c.prompts_dir},
                  {"out_dir", c.out_dir}};
  return j.dump(2) + "\n";
}

ExperimentConfig load_experiment_config(const std::string& path) {
  return parse_experiment_config(read_text_file(path));
}

void save_experiment_config(const std::string& path, const ExperimentConfig& config) {
  write_text_file(path, serialize_experiment_config(config));
}

void validate_experiment_config(const ExperimentConfig& c) {
  switch (c.group) {
    case ExperimentGroup::Independent:
      if (!c.mentors.empty())
        throw ConfigError("the independent group takes no mentors");
      break;
    case ExperimentGroup::SingleMentor:
      if (c.mentors.size() != 1)
        throw ConfigError("the single-mentor group takes exactly one mentor");
      break;
    case ExperimentGroup::MultiMentor:
      if (c.mentors.size() < 2)
        throw ConfigError("the multi-mentor group takes at least two mentors");
      break;
  }
  if (c.backend != "scripted" && c.backend != "remote")
    throw ConfigError("backend must be \"scripted\" or \"remote\"");
  if (c.episode_length < 1) throw ConfigError("episode_length must be at least 1");
  if (c.runs < 1) throw ConfigError("runs must be at least 1");
  if (!c.seeds.empty()) {
    if (static_cast<int>(c.seeds.size()) != c.runs)
      throw ConfigError("seeds must be empty or list one seed per run");
    const std::set<std::uint64_t> unique(c.seeds.begin(), c.seeds.end());
    if (unique.size() != c.seeds.size()) throw ConfigError("seeds must be distinct");
  }
  if (c.split_step < 0 || c.split_step > c.episode_length)
    throw ConfigError("split_step must lie within the episode");
  if (!(c.smoothing >= 0.0 && c.smoothing < 1.0))
    throw ConfigError("smoothing must be in [0, 1)");
  if (!(c.confidence > 0.0 && c.confidence < 1.0))
    throw ConfigError("confidence must be in (0, 1)");
  if (c.workers < 1) throw ConfigError("workers must be at least 1");
  if (!(c.cursor.consult_threshold > 0.0 && c.cursor.consult_threshold <= 1.0))
    throw ConfigError("cursor consult_threshold must be in (0, 1]");
  if (c.cursor.change_rate < 0.0) throw ConfigError("cursor change_rate must not be negative");
  if (c.cursor.slope <= 0.0) throw ConfigError("cursor slope must be positive");
}

std::vector<std::uint64_t> experiment_seeds(const ExperimentConfig& config) {
  if (!config.seeds.empty()) return config.seeds;
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(config.runs));
  for (int i = 0; i < config.runs; ++i) seeds[static_cast<std::size_t>(i)] = i + 1;
  return seeds;
}

Experiment::Experiment(ExperimentConfig config) : config_(std::move(config)) {
  validate_experiment_config(config_);
  const env::ScenarioConfig scenario_config = config_.scenario_path.empty()
                                                  ? env::default_scenario_config()
                                                  : env::load_scenario(config_.scenario_path);
  scenario_ = std::make_shared<const env::Scenario>(env::compile_scenario(scenario_config));
  for (const auto& ref : config_.mentors) {
    auto artifact = mentors::load_policy(ref.path);
    mentors::verify_scenario(artifact, *scenario_);
    if (artifact.team != config_.team)
      throw ConfigError("mentor " + ref.path + " plays the other team");
    pool_.add(std::move(artifact));
  }
  prompts_ = config_.prompts_dir.empty() ? agents::PromptLibrary::builtin()
                                         : agents::PromptLibrary::from_directory(config_.prompts_dir);
  if (config_.backend == "remote") {
    // Fail before any run starts rather than after a full episode of retries.
    if (std::getenv(config_.remote.credential_env.c_str()) == nullptr)
      throw llm::MissingCredentialError("environment variable " +
                                        config_.remote.credential_env + " is not set");
    gateway_ = std::make_unique<llm::HttpGateway>(config_.remote);
  } else {
    gateway_ = std::make_unique<llm::ScriptedGateway>();
  }
}

EpisodeTrace Experiment::run_episode(std::uint64_t seed) const {
  EpisodeTrace trace;
  trace.seed = seed;
  trace.team = config_.team;

  auto state = env::build_scenario(scenario_);
  state.rng = Rng(Rng::mix(seed, kEnvStream));
  const int H = scenario_->host_count();
  const env::Team team = config_.team;

  const auto guideline = agents::init_profile(team, *gateway_, prompts_);
  agents::MemoryStore memory;
  collab::Cursor cursor(config_.cursor);
  agents::HistoryWindow history;

  const double initial_red_reward = env::compute_reward(state);
  double prev_reward = team == env::Team::Red ? initial_red_reward : -initial_red_reward;
  double last_delta = 0.0;

  for (int t = 0; t < config_.episode_length; ++t) {
    const auto obs = env::observe(state, team);
    StepRecord rec;
    rec.step = t;
    rec.observation = obs.to_vector();
    if (t >= 1) {
      const auto update = cursor.advance(t);
      rec.schedule_part = update.schedule_part;
      rec.experience_part = update.experience_part;
    }
    rec.independence = cursor.independence();

    const auto dilemma = agents::detect_dilemma(history);
    const std::vector<env::Action> exclusions =
        dilemma.any() ? dilemma.suspicious : std::vector<env::Action>{};
    for (const auto& a : exclusions) rec.excluded.push_back(scenario_->action_name(a));

    const auto legal = env::legal_actions(state, team);
    const auto space = agents::build_action_space(guideline, legal, exclusions, H);

    std::vector<mentors::Suggestion> merged;
    bool consulted = false;
    if (config_.group != ExperimentGroup::Independent) {
      if (dilemma.any()) {
        merged = pool_.call_for_help(obs);
        consulted = true;
      } else if (cursor.should_consult()) {
        merged = pool_.consult(obs);
        consulted = true;
      }
    }
    std::vector<mentors::Suggestion> offered;
    for (const auto& s : merged)
      if (std::find(space.begin(), space.end(), s.action) != space.end()) offered.push_back(s);

    agents::DecisionContext context;
    context.team = team;
    context.step = t;
    context.observation = obs;
    context.reward_delta = last_delta;
    context.memories = memory.retrieve(rec.observation, t);
    context.guideline = &guideline;
    context.suggestions = offered;
    context.action_space = space;
    context.dilemma = dilemma.any();
    context.suspicious = dilemma.suspicious;
    context.scenario = scenario_.get();
    const auto outcome = agents::decide(context, *gateway_, prompts_);

    const env::Action opponent =
        team == env::Team::Red
            ? env::scripted_blue(env::observe(state, env::Team::Blue), state.rng)
            : env::scripted_red(state);
    auto [next_state, step_outcome] =
        env::apply_step(std::move(state), team == env::Team::Red ? outcome.action : opponent,
                        team == env::Team::Blue ? outcome.action : opponent);
    state = std::move(next_state);

    const double reward =
        team == env::Team::Red ? step_outcome.red_reward : step_outcome.blue_reward;
    const bool success =
        team == env::Team::Red ? step_outcome.red_success : step_outcome.blue_success;
    const double delta = reward - prev_reward;
    prev_reward = reward;
    last_delta = delta;

    const std::string action_name = scenario_->action_name(outcome.action);
    const int importance =
        agents::rate_importance(*gateway_, prompts_, team, action_name, success, delta);
    memory.add({t, rec.observation, action_name, success, reward, importance});
    history.actions.push_back(outcome.action);
    history.rewards.push_back(reward);
    cursor.record_reward(reward);

    rec.action = action_name;
    rec.success = success;
    rec.reward = reward;
    rec.consulted = consulted;
    rec.dilemma = dilemma.any();
    rec.accepted = outcome.accepted;
    rec.fallback_level = outcome.fallback_level;
    for (const auto& s : offered)
      rec.suggestions.push_back(
          {s.mentor_id, scenario_->action_name(s.action), s.confidence});
    rec.prompt = outcome.prompt;
    rec.reply = outcome.raw_reply;
    trace.steps.push_back(std::move(rec));
    trace.cumulative_reward += reward;
  }
  return trace;
}

MetricsReport Experiment::run() const {
  const auto seeds = experiment_seeds(config_);
  std::vector<std::optional<EpisodeTrace>> slots(seeds.size());

  const int workers = std::min<int>(config_.workers, static_cast<int>(seeds.size()));
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= seeds.size()) return;
      try {
        slots[i] = run_episode(seeds[i]);
      } catch (const std::exception& err) {
        log_warn("run with seed " + std::to_string(seeds[i]) + " failed: " + err.what());
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) threads.emplace_back(work);
    for (auto& th : threads) th.join();
  }

  std::vector<EpisodeTrace> completed;
  std::vector<std::size_t> completed_index;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i]) {
      completed.push_back(std::move(*slots[i]));
      completed_index.push_back(i);
    }
  }
  const auto report =
      build_report(config_.group, config_.team, seeds, completed, config_.episode_length,
                   config_.split_step, config_.smoothing, config_.confidence);

  if (!config_.out_dir.empty()) {
    const std::filesystem::path out(config_.out_dir);
    std::filesystem::create_directories(out / "traces");
    save_experiment_config((out / "config.json").string(), config_);
    for (std::size_t k = 0; k < completed.size(); ++k) {
      const std::size_t i = completed_index[k];
      std::string index = std::to_string(i);
      if (index.size() < 2) index.insert(0, 2 - index.size(), '0');
      const std::string name =
          "run_" + index + "_seed_" + std::to_string(seeds[i]) + ".jsonl";
      write_trace((out / "traces" / name).string(), completed[k]);
    }
    write_text_file((out / "report.csv").string(), report_to_csv(report));
    write_text_file((out / "report.json").string(), report_to_json_text(report));
  }
  return report;
}

}  // namespace cyberops::harness
