#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "cyberops/common/errors.hpp"
#include "cyberops/common/text.hpp"
#include "cyberops/harness/experiment.hpp"
#include "cyberops/harness/metrics.hpp"
#include "cyberops/harness/report.hpp"
#include "cyberops/harness/trace.hpp"
#include "cyberops/llm/gateway.hpp"
#include "cyberops/mentors/training.hpp"

using namespace cyberops;
using namespace cyberops::harness;

namespace {

std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "cyberops_harness_test" / name;
  std::filesystem::create_directories(dir);
  return dir;
}

StepRecord step_with_flags(int step, bool consulted, bool dilemma, bool accepted) {
  StepRecord s;
  s.step = step;
  s.consulted = consulted;
  s.dilemma = dilemma;
  s.accepted = accepted;
  return s;
}

EpisodeTrace trace_with_rewards(std::uint64_t seed, const std::vector<double>& rewards) {
  EpisodeTrace t;
  t.seed = seed;
  for (std::size_t i = 0; i < rewards.size(); ++i) {
    StepRecord s;
    s.step = static_cast<int>(i);
    s.reward = rewards[i];
    t.steps.push_back(s);
    t.cumulative_reward += rewards[i];
  }
  return t;
}

env::ScenarioConfig star_config() {
  env::ScenarioConfig cfg;
  cfg.name = "star";
  cfg.hosts = {{"A", env::SubnetKind::User, 0.1, true},
               {"B", env::SubnetKind::User, 0.1, false},
               {"C", env::SubnetKind::Enterprise, 1.0, false},
               {"D", env::SubnetKind::Operational, 10.0, false}};
  cfg.adjacency = {{"A", "B"}, {"A", "C"}, {"A", "D"}};
  return cfg;
}

// Trains a small value-table mentor and saves it where an experiment config
// can pick it up.
std::string saved_mentor(const std::string& name, env::Team team, std::uint64_t seed,
                         const env::ScenarioConfig& scenario) {
  mentors::TrainConfig cfg;
  cfg.episodes = 25;
  cfg.max_steps = 10;
  cfg.seed = seed;
  const auto result = mentors::train_mentor(mentors::Algorithm::QLearning, scenario, cfg, team);
  const auto path = temp_dir("mentors") / name;
  mentors::save_policy(result.artifact, path.string());
  return path.string();
}

}  // namespace

TEST_CASE("episode traces round-trip through the JSONL file") {
  EpisodeTrace trace;
  trace.seed = 42;
  trace.team = env::Team::Blue;
  trace.cumulative_reward = -1.25;

  StepRecord first;
  first.step = 0;
  first.observation = {1.0, 0.0, 1.0 / 3.0, 0.1 + 0.2};  // exercise non-terminating doubles
  first.action = "Monitor";
  first.success = true;
  first.reward = -0.089;
  first.consulted = true;
  first.dilemma = false;
  first.accepted = true;
  first.fallback_level = 1;
  first.independence = 0.5033749487431216;
  first.schedule_part = 0.0033749487431216085;
  first.experience_part = -0.3;
  first.excluded = {"Remove(E0)", "Restore(O1)"};
  first.suggestions = {{"q", "Monitor", 0.7071067811865476}, {"pg", "Remove(U4)", 0.25}};
  first.prompt = "line one\nline two with \"quotes\" and {braces}";
  first.reply = "Monitor";

  StepRecord second;
  second.step = 1;
  second.observation = {0.0, 1.0};
  second.action = "Remove(U4)";
  second.reward = 0.5;

  trace.steps = {first, second};

  const auto path = temp_dir("traces") / "roundtrip.jsonl";
  write_trace(path.string(), trace);
  const auto loaded = read_trace(path.string());
  CHECK(loaded == trace);

  // The file is one JSON object per line, meta first.
  const auto text = read_text_file(path.string());
  const auto lines = split(text, '\n');
  REQUIRE(lines.size() >= 3);
  CHECK(lines[0].find("\"type\":\"meta\"") != std::string::npos);
  CHECK(lines[0].find("\"schema_version\":1") != std::string::npos);
  CHECK(lines[1].find("\"type\":\"step\"") != std::string::npos);
}

TEST_CASE("trace files that cannot be trusted are refused") {
  const auto dir = temp_dir("bad_traces");
  CHECK_THROWS_AS(read_trace((dir / "missing.jsonl").string()), IoError);

  write_text_file((dir / "no_meta.jsonl").string(), "{\"type\":\"step\",\"step\":0}\n");
  CHECK_THROWS_AS(read_trace((dir / "no_meta.jsonl").string()), ArtifactError);

  write_text_file((dir / "garbled.jsonl").string(), "{oops\n");
  CHECK_THROWS_AS(read_trace((dir / "garbled.jsonl").string()), ArtifactError);

  write_text_file((dir / "bad_field.jsonl").string(),
                  "{\"type\":\"meta\",\"seed\":1,\"team\":\"red\",\"cumulative_reward\":0}\n"
                  "{\"type\":\"step\",\"step\":\"zero\"}\n");
  CHECK_THROWS_AS(read_trace((dir / "bad_field.jsonl").string()), ArtifactError);
}

TEST_CASE("collaboration metrics from a hand-checked episode") {
  // Ten steps; consults at 0, 2, 5, 7; dilemmas among those at 5 and 7;
  // acceptances at 0 and 5.
  std::vector<StepRecord> steps;
  for (int t = 0; t < 10; ++t) steps.push_back(step_with_flags(t, false, false, false));
  steps[0] = step_with_flags(0, true, false, true);
  steps[2] = step_with_flags(2, true, false, false);
  steps[5] = step_with_flags(5, true, true, true);
  steps[7] = step_with_flags(7, true, true, false);

  const auto m = compute_metrics(steps, 5);

  CHECK(m.overall.steps == 10);
  CHECK(m.overall.consulted == 4);
  CHECK(m.overall.dilemma_consults == 2);
  CHECK(m.overall.accepted == 2);
  CHECK(m.overall.accepted_in_dilemma == 1);
  CHECK(m.overall.collaboration_rate == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(m.overall.dilemma_rate == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(m.overall.accept_rate == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(m.overall.dilemma_accept_rate == doctest::Approx(0.5).epsilon(1e-12));

  // Early segment: steps 0..4. No dilemma consults yet, so that rate is absent.
  CHECK(m.early.steps == 5);
  CHECK(m.early.consulted == 2);
  CHECK(m.early.collaboration_rate == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(m.early.dilemma_rate == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(m.early.accept_rate == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_FALSE(m.early.dilemma_accept_rate.has_value());

  CHECK(m.later.steps == 5);
  CHECK(m.later.dilemma_consults == 2);
  CHECK(m.later.dilemma_rate == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.later.dilemma_accept_rate == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("rates with empty denominators stay absent") {
  const auto empty = compute_metrics({}, 10);
  CHECK(empty.overall.steps == 0);
  CHECK_FALSE(empty.overall.collaboration_rate.has_value());
  CHECK_FALSE(empty.overall.dilemma_rate.has_value());
  CHECK_FALSE(empty.overall.accept_rate.has_value());
  CHECK_FALSE(empty.overall.dilemma_accept_rate.has_value());

  // Steps without any consultation: only the collaboration rate is defined.
  const auto quiet = compute_metrics({step_with_flags(0, false, false, false),
                                      step_with_flags(1, false, true, false)},
                                     1);
  CHECK(quiet.overall.collaboration_rate == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_FALSE(quiet.overall.accept_rate.has_value());
  CHECK_FALSE(quiet.overall.dilemma_rate.has_value());
  // A dilemma that was not consulted on contributes nothing.
  CHECK(quiet.overall.dilemma_consults == 0);
}

TEST_CASE("flag invariants catch impossible step records") {
  std::vector<StepRecord> good = {step_with_flags(0, true, false, true),
                                  step_with_flags(1, false, false, false),
                                  step_with_flags(2, true, true, false)};
  CHECK_FALSE(check_flag_invariants(good, true).has_value());

  const auto orphan_accept =
      check_flag_invariants({step_with_flags(3, false, false, true)}, true);
  REQUIRE(orphan_accept.has_value());
  CHECK(orphan_accept->find("step 3") != std::string::npos);
  CHECK(orphan_accept->find("accepted without consulting") != std::string::npos);

  // With mentors, a dilemma forces a call for help.
  const auto silent_dilemma =
      check_flag_invariants({step_with_flags(4, false, true, false)}, true);
  REQUIRE(silent_dilemma.has_value());
  CHECK(silent_dilemma->find("dilemma without consulting") != std::string::npos);
  // Without mentors the same record is fine, but consulting is impossible.
  CHECK_FALSE(check_flag_invariants({step_with_flags(4, false, true, false)}, false));
  const auto ghost = check_flag_invariants({step_with_flags(5, true, false, false)}, false);
  REQUIRE(ghost.has_value());
  CHECK(ghost->find("consulted without mentors") != std::string::npos);
}

TEST_CASE("exponential smoothing keeps nine tenths of the past") {
  const auto s = exponential_smoothing({0.0, 1.0, 1.0, 1.0}, 0.9);
  REQUIRE(s.size() == 4);
  CHECK(s[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(s[1] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(s[2] == doctest::Approx(0.19).epsilon(1e-12));
  CHECK(s[3] == doctest::Approx(0.271).epsilon(1e-12));

  // Factor zero passes the input through untouched.
  const std::vector<double> raw = {3.0, -1.0, 0.5};
  CHECK(exponential_smoothing(raw, 0.0) == raw);
  CHECK(exponential_smoothing({}, 0.9).empty());

  CHECK_THROWS_AS(exponential_smoothing(raw, 1.0), ConfigError);
  CHECK_THROWS_AS(exponential_smoothing(raw, -0.1), ConfigError);
}

TEST_CASE("confidence intervals use the t-distribution") {
  CHECK_THROWS_AS(mean_confidence_interval({}, 0.95), ConfigError);
  CHECK_THROWS_AS(mean_confidence_interval({1.0}, 0.0), ConfigError);
  CHECK_THROWS_AS(mean_confidence_interval({1.0}, 1.0), ConfigError);

  // One sample: a point.
  CHECK(mean_confidence_interval({2.5}, 0.95) == ConfidenceInterval{2.5, 2.5});
  // No spread: a point.
  CHECK(mean_confidence_interval({2.0, 2.0, 2.0}, 0.95) == ConfidenceInterval{2.0, 2.0});

  // Two samples {0, 1}: sd / sqrt(2) is exactly 0.5, so the half-width is
  // half the 97.5% t quantile at one degree of freedom (12.7062...).
  const auto two = mean_confidence_interval({0.0, 1.0}, 0.95);
  const double t1 = 12.706204736432095;  // tabulated
  CHECK(two.low == doctest::Approx(0.5 - t1 * 0.5).epsilon(1e-9));
  CHECK(two.high == doctest::Approx(0.5 + t1 * 0.5).epsilon(1e-9));

  // Five samples 1..5 against the tabulated quantile at four degrees.
  const auto five = mean_confidence_interval({1.0, 2.0, 3.0, 4.0, 5.0}, 0.95);
  const double t4 = 2.7764451051977987;  // tabulated
  const double sd = std::sqrt(2.5);
  const double half = t4 * sd / std::sqrt(5.0);
  CHECK(five.low == doctest::Approx(3.0 - half).epsilon(1e-9));
  CHECK(five.high == doctest::Approx(3.0 + half).epsilon(1e-9));

  // Wider confidence, wider interval.
  const auto wider = mean_confidence_interval({1.0, 2.0, 3.0, 4.0, 5.0}, 0.99);
  CHECK(wider.low < five.low);
  CHECK(wider.high > five.high);
}

TEST_CASE("experiment group names round-trip") {
  for (const auto group : {ExperimentGroup::Independent, ExperimentGroup::SingleMentor,
                           ExperimentGroup::MultiMentor})
    CHECK(group_from_string(to_string(group)) == group);
  CHECK_FALSE(group_from_string("committee").has_value());
  CHECK(group_from_string("MULTI_MENTOR") == ExperimentGroup::MultiMentor);
}

TEST_CASE("experiment configs round-trip through JSON") {
  ExperimentConfig cfg;
  cfg.group = ExperimentGroup::MultiMentor;
  cfg.team = env::Team::Blue;
  cfg.scenario_path = "scenario.json";
  cfg.mentors = {{"a.json"}, {"b.json"}};
  cfg.backend = "remote";
  cfg.remote.base_url = "https://example.test";
  cfg.remote.model = "m-1";
  cfg.remote.credential_env = "MY_KEY";
  cfg.remote.timeout_ms = 1234;
  cfg.cursor.consult_threshold = 0.7;
  cfg.cursor.convention = collab::SignConvention::Reinforcing;
  cfg.episode_length = 64;
  cfg.runs = 3;
  cfg.seeds = {11, 22, 33};
  cfg.split_step = 32;
  cfg.smoothing = 0.8;
  cfg.confidence = 0.9;
  cfg.workers = 2;
  cfg.prompts_dir = "prompts";
  cfg.out_dir = "out";

  const auto restored = parse_experiment_config(serialize_experiment_config(cfg));
  CHECK(restored == cfg);
  CHECK_NOTHROW(validate_experiment_config(restored));

  // Omitted fields fall back to defaults.
  const auto minimal = parse_experiment_config(R"({"group":"independent","team":"red"})");
  CHECK(minimal.episode_length == 100);
  CHECK(minimal.backend == "scripted");
  CHECK(minimal.cursor == collab::CursorConfig{});
  CHECK(experiment_seeds(minimal) == std::vector<std::uint64_t>{1, 2, 3, 4, 5});
  CHECK(experiment_seeds(cfg) == std::vector<std::uint64_t>{11, 22, 33});

  CHECK_THROWS_AS(parse_experiment_config("{nope"), ConfigError);
  CHECK_THROWS_AS(parse_experiment_config("{}"), ConfigError);
  CHECK_THROWS_AS(parse_experiment_config(R"({"group":"committee","team":"red"})"),
                  ConfigError);
  CHECK_THROWS_AS(
      parse_experiment_config(
          R"({"group":"independent","team":"red","cursor":{"convention":"sideways"}})"),
      ConfigError);
}

TEST_CASE("experiment configs are validated knob by knob") {
  ExperimentConfig base;
  base.group = ExperimentGroup::Independent;
  base.runs = 2;
  base.episode_length = 10;
  base.split_step = 5;
  CHECK_NOTHROW(validate_experiment_config(base));

  auto broken = [&](auto mutate) {
    ExperimentConfig c = base;
    mutate(c);
    CHECK_THROWS_AS(validate_experiment_config(c), ConfigError);
  };
  broken([](ExperimentConfig& c) { c.mentors = {{"m.json"}}; });  // independent + mentors
  broken([](ExperimentConfig& c) { c.group = ExperimentGroup::SingleMentor; });
  broken([](ExperimentConfig& c) {
    c.group = ExperimentGroup::MultiMentor;
    c.mentors = {{"only.json"}};
  });
  broken([](ExperimentConfig& c) { c.backend = "psychic"; });
  broken([](ExperimentConfig& c) { c.episode_length = 0; });
  broken([](ExperimentConfig& c) { c.runs = 0; });
  broken([](ExperimentConfig& c) { c.seeds = {1, 2, 3}; });  // three seeds, two runs
  broken([](ExperimentConfig& c) { c.seeds = {7, 7}; });     // duplicates
  broken([](ExperimentConfig& c) { c.split_step = 11; });    // beyond the episode
  broken([](ExperimentConfig& c) { c.split_step = -1; });
  broken([](ExperimentConfig& c) { c.smoothing = 1.0; });
  broken([](ExperimentConfig& c) { c.confidence = 1.0; });
  broken([](ExperimentConfig& c) { c.workers = 0; });
  broken([](ExperimentConfig& c) { c.cursor.consult_threshold = 0.0; });
  broken([](ExperimentConfig& c) { c.cursor.change_rate = -0.1; });
  broken([](ExperimentConfig& c) { c.cursor.slope = 0.0; });
}

TEST_CASE("report aggregation matches hand arithmetic") {
  // Two runs of three steps. Per-step means 2, 3, 4; cumulative means 2, 5, 9.
  std::vector<EpisodeTrace> traces = {trace_with_rewards(1, {1.0, 2.0, 3.0}),
                                      trace_with_rewards(2, {3.0, 4.0, 5.0})};
  // First run consults on every step and accepts twice; second never consults.
  for (auto& s : traces[0].steps) s.consulted = true;
  traces[0].steps[0].accepted = true;
  traces[0].steps[1].accepted = true;

  const auto report = build_report(ExperimentGroup::SingleMentor, env::Team::Red, {1, 2},
                                   traces, 3, 2, 0.9, 0.95);

  CHECK(report.group == ExperimentGroup::SingleMentor);
  CHECK(report.team == env::Team::Red);
  CHECK(report.episode_length == 3);
  CHECK(report.split_step == 2);
  CHECK(report.seeds == std::vector<std::uint64_t>{1, 2});
  CHECK_FALSE(report.partial);
  REQUIRE(report.steps.size() == 3);
  REQUIRE(report.per_run.size() == 2);

  CHECK(report.steps[0].mean_step_reward == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(report.steps[1].mean_step_reward == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(report.steps[2].mean_step_reward == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(report.steps[0].mean_cumulative_reward == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(report.steps[1].mean_cumulative_reward == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(report.steps[2].mean_cumulative_reward == doctest::Approx(9.0).epsilon(1e-12));

  // Smoothing walks the mean series with factor 0.9 from zero.
  CHECK(report.steps[0].smoothed_step_reward == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(report.steps[1].smoothed_step_reward == doctest::Approx(0.48).epsilon(1e-12));
  CHECK(report.steps[2].smoothed_step_reward == doctest::Approx(0.832).epsilon(1e-12));
  CHECK(report.steps[2].smoothed_cumulative_reward == doctest::Approx(1.512).epsilon(1e-12));

  // Two runs per step: half-width is t(0.975, 1) * sd / sqrt(2).
  const double t1 = 12.706204736432095;
  const double half = t1 * std::sqrt(2.0) / std::sqrt(2.0);
  CHECK(report.steps[0].step_ci.low == doctest::Approx(2.0 - half).epsilon(1e-9));
  CHECK(report.steps[0].step_ci.high == doctest::Approx(2.0 + half).epsilon(1e-9));

  // Summary rates average only the runs where a rate was defined.
  CHECK(report.summary.overall.collaboration_rate == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(report.summary.overall.accept_rate == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK_FALSE(report.summary.overall.dilemma_accept_rate.has_value());

  // Losing a run flags the report partial.
  const auto partial = build_report(ExperimentGroup::SingleMentor, env::Team::Red, {1, 2},
                                    {traces[0]}, 3, 2, 0.9, 0.95);
  CHECK(partial.partial);

  CHECK_THROWS_AS(build_report(ExperimentGroup::Independent, env::Team::Red, {1}, {}, 3, 2,
                               0.9, 0.95),
                  ArtifactError);
  CHECK_THROWS_AS(build_report(ExperimentGroup::Independent, env::Team::Red, {1, 2}, traces,
                               4, 2, 0.9, 0.95),
                  ArtifactError);
}

TEST_CASE("reports round-trip through CSV and JSON text") {
  std::vector<EpisodeTrace> traces = {trace_with_rewards(3, {0.089, 0.139, 0.1, -0.25}),
                                      trace_with_rewards(9, {0.089, 0.2, 0.3, 0.4})};
  for (auto& s : traces[0].steps) s.consulted = true;
  traces[0].steps[2].dilemma = true;
  traces[0].steps[2].accepted = true;
  const auto report = build_report(ExperimentGroup::MultiMentor, env::Team::Red, {3, 9},
                                   traces, 4, 2, 0.9, 0.95);

  const auto csv = report_to_csv(report);
  CHECK(csv.find("# cyberops experiment report v1") == 0);
  CHECK(csv.find("group=multi_mentor") != std::string::npos);
  const auto imported = import_report_csv(csv);
  CHECK(imported.steps == report.steps);
  CHECK(imported.summary == report.summary);

  // Equal reports always render to identical bytes.
  CHECK(report_to_csv(report) == csv);

  const auto json_text = report_to_json_text(report);
  const auto restored = report_from_json_text(json_text);
  CHECK(restored == report);
  CHECK(report_to_json_text(restored) == json_text);

  CHECK_THROWS_AS(import_report_csv("not,a,report\n"), ArtifactError);
  CHECK_THROWS_AS(report_from_json_text("{}"), ArtifactError);
}

TEST_CASE("scripted experiments replay byte for byte") {
  ExperimentConfig cfg;
  cfg.group = ExperimentGroup::Independent;
  cfg.team = env::Team::Red;
  cfg.episode_length = 12;
  cfg.runs = 2;
  cfg.seeds = {5, 9};
  cfg.split_step = 6;

  const Experiment experiment(cfg);
  const auto once = experiment.run_episode(5);
  const auto twice = experiment.run_episode(5);
  CHECK(once == twice);
  CHECK(once.steps.size() == 12);
  CHECK(experiment.run_episode(9) != once);

  // Independent runs never consult, and the flag invariants hold.
  CHECK_FALSE(check_flag_invariants(once.steps, false).has_value());

  const auto report_a = experiment.run();
  const auto report_b = experiment.run();
  CHECK(report_a == report_b);

  // A worker pool changes scheduling, not results.
  ExperimentConfig threaded = cfg;
  threaded.workers = 2;
  const auto report_c = Experiment(threaded).run();
  CHECK(report_to_json_text(report_c) == report_to_json_text(report_a));
}

TEST_CASE("experiment artifacts land under the output directory") {
  const auto out = temp_dir("experiment_out");
  std::filesystem::remove_all(out);

  ExperimentConfig cfg;
  cfg.group = ExperimentGroup::Independent;
  cfg.team = env::Team::Blue;
  cfg.episode_length = 8;
  cfg.runs = 2;
  cfg.seeds = {4, 6};
  cfg.split_step = 4;
  cfg.out_dir = out.string();

  const auto report = Experiment(cfg).run();

  CHECK(std::filesystem::is_regular_file(out / "config.json"));
  CHECK(std::filesystem::is_regular_file(out / "traces" / "run_00_seed_4.jsonl"));
  CHECK(std::filesystem::is_regular_file(out / "traces" / "run_01_seed_6.jsonl"));
  CHECK(std::filesystem::is_regular_file(out / "report.csv"));
  CHECK(std::filesystem::is_regular_file(out / "report.json"));

  CHECK(load_experiment_config((out / "config.json").string()) == cfg);
  const auto trace = read_trace((out / "traces" / "run_00_seed_4.jsonl").string());
  CHECK(trace.seed == 4);
  CHECK(trace.team == env::Team::Blue);
  CHECK(trace.steps.size() == 8);

  CHECK(read_text_file((out / "report.csv").string()) == report_to_csv(report));
  CHECK(report_from_json_text(read_text_file((out / "report.json").string())) == report);
}

TEST_CASE("mentored experiments consult their pool") {
  const auto scenario_path = (temp_dir("scenario") / "star.json").string();
  env::save_scenario(star_config(), scenario_path);

  ExperimentConfig cfg;
  cfg.group = ExperimentGroup::MultiMentor;
  cfg.team = env::Team::Red;
  cfg.scenario_path = scenario_path;
  cfg.mentors = {{saved_mentor("red_a.json", env::Team::Red, 1, star_config())},
                 {saved_mentor("red_b.json", env::Team::Red, 2, star_config())}};
  cfg.episode_length = 10;
  cfg.runs = 2;
  cfg.seeds = {3, 8};
  cfg.split_step = 5;

  const Experiment experiment(cfg);
  CHECK(experiment.pool().size() == 2);

  const auto trace = experiment.run_episode(3);
  CHECK_FALSE(check_flag_invariants(trace.steps, true).has_value());
  // The cursor starts below the threshold, so the very first step consults.
  CHECK(trace.steps[0].consulted);
  CHECK_FALSE(trace.steps[0].suggestions.empty());

  const auto report = experiment.run();
  REQUIRE(report.per_run.size() == 2);
  CHECK(report.per_run[0].overall.consulted > 0);
  CHECK(report.summary.overall.collaboration_rate.has_value());
}

TEST_CASE("experiment setup refuses mismatched mentors and missing credentials") {
  const auto scenario_path = (temp_dir("scenario") / "star2.json").string();
  env::save_scenario(star_config(), scenario_path);

  // Mentor trained for the other team.
  ExperimentConfig wrong_team;
  wrong_team.group = ExperimentGroup::SingleMentor;
  wrong_team.team = env::Team::Red;
  wrong_team.scenario_path = scenario_path;
  wrong_team.mentors = {{saved_mentor("blue.json", env::Team::Blue, 3, star_config())}};
  CHECK_THROWS_AS(Experiment{wrong_team}, ConfigError);

  // Mentor trained for a structurally different scenario.
  ExperimentConfig wrong_scenario;
  wrong_scenario.group = ExperimentGroup::SingleMentor;
  wrong_scenario.team = env::Team::Red;
  wrong_scenario.mentors = {{saved_mentor("star.json", env::Team::Red, 4, star_config())}};
  CHECK_THROWS_AS(Experiment{wrong_scenario}, ArtifactError);

  // Remote backend with an unset credential variable fails before any run.
  ExperimentConfig remote;
  remote.group = ExperimentGroup::Independent;
  remote.backend = "remote";
  remote.remote.credential_env = "CYBEROPS_HARNESS_TEST_NO_SUCH_VAR";
  CHECK_THROWS_AS(Experiment{remote}, llm::MissingCredentialError);
}
