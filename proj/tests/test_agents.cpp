#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cyberops/agents/action_space.hpp"
#include "cyberops/agents/decide.hpp"
#include "cyberops/agents/memory.hpp"
#include "cyberops/agents/profile.hpp"
#include "cyberops/agents/prompts.hpp"
#include "cyberops/agents/reflection.hpp"
#include "cyberops/common/errors.hpp"
#include "cyberops/common/log.hpp"
#include "cyberops/common/text.hpp"
#include "cyberops/env/game.hpp"
#include "cyberops/llm/scripted_gateway.hpp"

using namespace cyberops;
using namespace cyberops::agents;

namespace {

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

// Canned-reply backend that records every request it served.
class StubGateway final : public llm::CompletionGateway {
 public:
  explicit StubGateway(std::vector<std::string> replies) : replies_(std::move(replies)) {}

  llm::CompletionResult complete(const llm::CompletionRequest& request) override {
    requests.push_back(request);
    llm::CompletionResult result;
    result.backend_id = id();
    result.text = calls_ < replies_.size() ? replies_[calls_] : "OK";
    ++calls_;
    return result;
  }
  std::string id() const override { return "stub"; }

  std::vector<llm::CompletionRequest> requests;

 private:
  std::vector<std::string> replies_;
  std::size_t calls_ = 0;
};

class DownGateway final : public llm::CompletionGateway {
 public:
  llm::CompletionResult complete(const llm::CompletionRequest&) override {
    ++calls;
    throw llm::RetriesExhaustedError("backend unavailable");
  }
  std::string id() const override { return "down"; }
  int calls = 0;
};

// Redirects warnings into a vector for the duration of a scope.
struct LogCapture {
  std::vector<std::string> warnings;
  LogCapture() {
    set_log_sink([this](LogLevel level, const std::string& message) {
      if (level >= LogLevel::Warn) warnings.push_back(message);
    });
  }
  ~LogCapture() { set_log_sink({}); }
};

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

env::Action red_action(env::Verb verb, int target) { return {env::Team::Red, verb, target}; }

mentors::Suggestion suggest(env::Verb verb, int target, double confidence) {
  mentors::Suggestion s;
  s.action = red_action(verb, target);
  s.confidence = confidence;
  s.mentor_id = "q";
  return s;
}

}  // namespace

TEST_CASE("prompt templates render with placeholder substitution") {
  const auto lib = PromptLibrary::builtin();
  for (const char* key : {"red.decision", "red.reflection", "red.profile", "blue.decision",
                          "blue.reflection", "blue.profile", "importance"})
    CHECK(lib.has(key));
  CHECK_FALSE(lib.has("red.unknown"));
  CHECK_THROWS_AS(lib.raw("red.unknown"), ConfigError);

  CHECK(PromptLibrary::key_for(env::Team::Red, "decision") == "red.decision");
  CHECK(PromptLibrary::key_for(env::Team::Blue, "reflection") == "blue.reflection");

  const auto text = lib.render("red.decision", {{"role", "red"},
                                                {"goal", "win"},
                                                {"step", "4"},
                                                {"action_space", "Sleep"}});
  CHECK(contains(text, "Role: red"));
  CHECK(contains(text, "Goal: win"));
  CHECK(contains(text, "Step: 4"));
  CHECK(contains(text, "Action space: Sleep"));
  // Values not supplied stay visible instead of vanishing.
  CHECK(contains(text, "Observation: {observation}"));
  CHECK(contains(text, "Suggestions: {suggestions}"));
}

TEST_CASE("prompt directory overrides a subset of templates") {
  const auto dir = std::filesystem::temp_directory_path() / "cyberops_prompt_test";
  std::filesystem::create_directories(dir);
  write_text_file((dir / "red_decision.txt").string(), "Custom for {role}\n");

  const auto lib = PromptLibrary::from_directory(dir.string());
  CHECK(lib.raw("red.decision") == "Custom for {role}\n");
  CHECK(lib.render("red.decision", {{"role", "red"}}) == "Custom for red\n");
  // Untouched keys keep the built-in text.
  CHECK(lib.raw("blue.decision") == PromptLibrary::builtin().raw("blue.decision"));

  CHECK_THROWS_AS(PromptLibrary::from_directory((dir / "missing").string()), IoError);
}

TEST_CASE("behavior guidelines parse and round-trip through their text form") {
  const auto red = default_guideline(env::Team::Red);
  REQUIRE(red.entries.size() == 3);
  CHECK(red.entries[0].verb == env::Verb::Discover);
  CHECK(red.entries[1].verb == env::Verb::Exploit);
  CHECK(red.entries[2].verb == env::Verb::Escalate);
  CHECK(red.verb_rank(env::Verb::Discover) == 0);
  CHECK(red.verb_rank(env::Verb::Escalate) == 2);
  // Verbs outside the playbook rank after every listed one.
  CHECK(red.verb_rank(env::Verb::Sleep) > 2);

  // to_text emits the same line format the parser accepts.
  CHECK(parse_guideline_text(red.to_text(), env::Team::Red) == red.entries);

  const auto blue = default_guideline(env::Team::Blue);
  REQUIRE(blue.entries.size() == 3);
  CHECK(blue.entries[0].verb == env::Verb::Monitor);
  CHECK(contains(blue.to_text(), "Role: blue"));
}

TEST_CASE("guideline parsing is tolerant and drops what it cannot use") {
  const std::string text =
      "Here is my plan:\n"
      "1. action: discover; goal: map; trigger: start; following: Exploit; outcome: known\n"
      "2) action: Exploit; goal: use\n"
      "3. action: Monitor; goal: wrong team\n"
      "4. action: Fly; goal: no such verb\n"
      "5. action: Discover; goal: duplicate, dropped\n"
      "not an entry at all\n";
  const auto entries = parse_guideline_text(text, env::Team::Red);
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].verb == env::Verb::Discover);
  CHECK(entries[0].goal == "map");
  CHECK(entries[0].trigger == "start");
  CHECK(entries[0].following == "Exploit");
  CHECK(entries[0].outcome == "known");
  CHECK(entries[1].verb == env::Verb::Exploit);
  CHECK(entries[1].goal == "use");
  CHECK(entries[1].trigger.empty());

  CHECK(parse_guideline_text("nothing here", env::Team::Red).empty());
  // Sleep is playable by both teams but never part of a playbook reply.
  const auto sleepy = parse_guideline_text("1. action: Sleep; goal: rest", env::Team::Red);
  CHECK(sleepy.size() == 1);
}

TEST_CASE("profile setup takes the backend playbook when it parses") {
  const auto prompts = PromptLibrary::builtin();

  // The scripted backend answers with the canned sequence, which is exactly
  // the built-in default.
  llm::ScriptedGateway scripted;
  const auto from_scripted = init_profile(env::Team::Red, scripted, prompts);
  CHECK(from_scripted.entries == default_guideline(env::Team::Red).entries);

  // A custom parseable reply replaces the default entries.
  StubGateway custom({"1. action: Escalate; goal: root first; trigger: always; "
                      "following: Discover; outcome: control"});
  const auto custom_profile = init_profile(env::Team::Red, custom, prompts);
  REQUIRE(custom_profile.entries.size() == 1);
  CHECK(custom_profile.entries[0].verb == env::Verb::Escalate);
  CHECK(custom_profile.goal == default_guideline(env::Team::Red).goal);
  REQUIRE(custom.requests.size() == 1);
  CHECK(contains(custom.requests[0].user_prompt, "numbered action sequence"));
  CHECK(contains(custom.requests[0].user_prompt, "Discover(Host), Exploit(Host)"));
}

TEST_CASE("profile setup retries once, then falls back with a warning") {
  const auto prompts = PromptLibrary::builtin();

  // First reply useless, the retry parses.
  StubGateway retry({"no plan, sorry", "1. action: exploit; goal: gained on retry"});
  const auto recovered = init_profile(env::Team::Red, retry, prompts);
  REQUIRE(recovered.entries.size() == 1);
  CHECK(recovered.entries[0].verb == env::Verb::Exploit);
  REQUIRE(retry.requests.size() == 2);
  CHECK_FALSE(contains(retry.requests[0].user_prompt, "Reminder:"));
  CHECK(contains(retry.requests[1].user_prompt,
                 "Reminder: follow the numbered line format exactly."));

  // Both replies useless: default playbook, one warning.
  {
    LogCapture capture;
    StubGateway hopeless({"nope", "still nope"});
    const auto fallback = init_profile(env::Team::Blue, hopeless, prompts);
    CHECK(fallback.entries == default_guideline(env::Team::Blue).entries);
    CHECK(hopeless.requests.size() == 2);
    REQUIRE(capture.warnings.size() == 1);
    CHECK(contains(capture.warnings[0], "unparseable"));
  }

  // Transport failure: immediate fallback, no retry.
  {
    LogCapture capture;
    DownGateway down;
    const auto fallback = init_profile(env::Team::Red, down, prompts);
    CHECK(fallback.entries == default_guideline(env::Team::Red).entries);
    CHECK(down.calls == 1);
    REQUIRE(capture.warnings.size() == 1);
    CHECK(contains(capture.warnings[0], "profile request failed"));
  }
}

TEST_CASE("cosine similarity is zero-safe") {
  CHECK(cosine_similarity({1.0, 0.0}, {1.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cosine_similarity({1.0, 0.0}, {0.0, 1.0}) == 0.0);
  CHECK(cosine_similarity({1.0, 0.0}, {-1.0, 0.0}) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(cosine_similarity({1.0, 2.0}, {1.0}) == 0.0);   // size mismatch
  CHECK(cosine_similarity({}, {}) == 0.0);              // empty
  CHECK(cosine_similarity({0.0, 0.0}, {1.0, 1.0}) == 0.0);  // zero norm
}

TEST_CASE("retrieval scores scale importance by similarity and age") {
  CHECK(retrieval_score(8, 0.9, 2) == doctest::Approx(0.36).epsilon(1e-12));
  CHECK(retrieval_score(10, 0.5, 1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(retrieval_score(2, 1.0, 1) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(retrieval_score(10, -0.4, 1) == 0.0);  // negative similarity clips to zero
  CHECK(retrieval_score(10, 1.0, 0) == 1.0);   // gap clamps to one
  CHECK(retrieval_score(0, 1.0, 1) == 0.0);
}

TEST_CASE("memory retrieval returns the two most relevant past records") {
  MemoryStore store;
  auto record = [](int ts, int importance, std::vector<double> obs, const char* name) {
    MemoryRecord r;
    r.timestamp = ts;
    r.importance = importance;
    r.observation = std::move(obs);
    r.action = name;
    return r;
  };
  const std::vector<double> query = {1.0, 0.0};

  // Scores at now = 5: first 0.8 * 0.9 / 2 = 0.36, second 1.0 * 0.5 / 1 = 0.5,
  // third 0.2 * 1.0 / 1 = 0.2.
  store.add(record(3, 8, {0.9, std::sqrt(1.0 - 0.81)}, "first"));
  store.add(record(4, 10, {0.5, std::sqrt(0.75)}, "second"));
  store.add(record(4, 2, {1.0, 0.0}, "third"));

  const auto top = store.retrieve(query, 5);
  REQUIRE(top.size() == 2);
  CHECK(top[0].action == "second");
  CHECK(top[1].action == "first");

  // Records from the current step or later never come back.
  store.add(record(5, 10, {1.0, 0.0}, "same-step"));
  store.add(record(6, 10, {1.0, 0.0}, "future"));
  const auto again = store.retrieve(query, 5);
  REQUIRE(again.size() == 2);
  CHECK(again[0].action == "second");

  store.clear();
  CHECK(store.retrieve(query, 5).empty());
}

TEST_CASE("memory ties break by recency, then insertion order") {
  MemoryStore store;
  MemoryRecord a;
  a.timestamp = 3;
  a.importance = 10;  // score 1.0 / 2 = 0.5
  a.observation = {1.0, 0.0};
  a.action = "older-stronger";
  MemoryRecord b;
  b.timestamp = 4;
  b.importance = 5;  // score 0.5 / 1 = 0.5
  b.observation = {1.0, 0.0};
  b.action = "newer-weaker";
  store.add(a);
  store.add(b);

  auto top = store.retrieve({1.0, 0.0}, 5);
  REQUIRE(top.size() == 2);
  CHECK(top[0].action == "newer-weaker");  // equal score, newer timestamp wins

  // Identical score and timestamp: first insertion ranks first.
  MemoryStore twins;
  MemoryRecord c = a;
  c.action = "first-in";
  MemoryRecord d = a;
  d.action = "second-in";
  twins.add(c);
  twins.add(d);
  top = twins.retrieve({1.0, 0.0}, 5);
  REQUIRE(top.size() == 2);
  CHECK(top[0].action == "first-in");
  CHECK(top[1].action == "second-in");
}

TEST_CASE("importance rating parses the backend score and survives failures") {
  const auto prompts = PromptLibrary::builtin();
  llm::ScriptedGateway scripted;

  // The scripted rule is round(10 * min(1, |delta| / 10)).
  CHECK(rate_importance(scripted, prompts, env::Team::Red, "Discover(U1)", true, 8.9) == 9);
  CHECK(rate_importance(scripted, prompts, env::Team::Red, "Sleep", false, 0.3) == 0);
  CHECK(rate_importance(scripted, prompts, env::Team::Blue, "Remove(E0)", true, -20.0) == 10);

  {
    LogCapture capture;
    StubGateway wordy({"it was quite memorable, honestly"});
    CHECK(rate_importance(wordy, prompts, env::Team::Red, "Sleep", true, 1.0) == 5);
    REQUIRE(capture.warnings.size() == 1);
    CHECK(contains(capture.warnings[0], "no usable score"));
  }
  {
    LogCapture capture;
    DownGateway down;
    CHECK(rate_importance(down, prompts, env::Team::Red, "Sleep", true, 1.0) == 5);
    REQUIRE(capture.warnings.size() == 1);
    CHECK(contains(capture.warnings[0], "importance request failed"));
  }
}

TEST_CASE("dilemma detection needs three identical trailing actions") {
  HistoryWindow h;
  h.actions = {red_action(env::Verb::Discover, 1), red_action(env::Verb::Discover, 1)};
  h.rewards = {0.1, 0.2};
  CHECK_FALSE(detect_dilemma(h).any());

  h.actions.push_back(red_action(env::Verb::Discover, 1));
  h.rewards.push_back(0.3);
  auto d = detect_dilemma(h);
  CHECK(d.repeated_action);
  CHECK_FALSE(d.flat_reward);
  REQUIRE(d.suspicious.size() == 1);
  CHECK(d.suspicious[0] == red_action(env::Verb::Discover, 1));

  // A different action at the tail clears the repeat.
  h.actions.push_back(red_action(env::Verb::Exploit, 1));
  h.rewards.push_back(0.4);
  CHECK_FALSE(detect_dilemma(h).any());
}

TEST_CASE("dilemma detection flags flat reward stretches") {
  HistoryWindow h;
  auto act = [&](env::Verb verb, int target, double reward) {
    h.actions.push_back(red_action(verb, target));
    h.rewards.push_back(reward);
  };
  act(env::Verb::Discover, 1, 0.5);
  act(env::Verb::Discover, 2, 0.6);
  act(env::Verb::Exploit, 1, 0.6);
  act(env::Verb::Exploit, 2, 0.6);
  act(env::Verb::Discover, 3, 0.6);
  CHECK_FALSE(detect_dilemma(h).any());  // five steps are not enough

  // Sixth step: newest reward vs five steps earlier, equality counts as flat.
  act(env::Verb::Discover, 4, 0.5);
  const auto d = detect_dilemma(h);
  CHECK(d.flat_reward);
  CHECK_FALSE(d.repeated_action);
  // Distinct actions of the stagnant stretch, oldest first; the first step
  // sits outside the window.
  REQUIRE(d.suspicious.size() == 5);
  CHECK(d.suspicious[0] == red_action(env::Verb::Discover, 2));
  CHECK(d.suspicious[4] == red_action(env::Verb::Discover, 4));

  // Progress in the window clears the flag.
  h.rewards.back() = 0.61;
  CHECK_FALSE(detect_dilemma(h).flat_reward);
}

TEST_CASE("dilemma kinds combine without duplicating suspects") {
  HistoryWindow h;
  const auto repeat = red_action(env::Verb::Exploit, 2);
  h.actions = {red_action(env::Verb::Discover, 1), red_action(env::Verb::Discover, 2),
               red_action(env::Verb::Discover, 2), repeat, repeat, repeat};
  h.rewards = {0.5, 0.5, 0.5, 0.5, 0.5, 0.5};
  const auto d = detect_dilemma(h);
  CHECK(d.repeated_action);
  CHECK(d.flat_reward);
  CHECK(d.any());
  // Repeat offender once, plus the other distinct window action.
  REQUIRE(d.suspicious.size() == 2);
  CHECK(d.suspicious[0] == repeat);
  CHECK(d.suspicious[1] == red_action(env::Verb::Discover, 2));

  // Without rewards recorded the flat check cannot run.
  HistoryWindow no_rewards;
  no_rewards.actions = h.actions;
  const auto partial = detect_dilemma(no_rewards);
  CHECK(partial.repeated_action);
  CHECK_FALSE(partial.flat_reward);
}

TEST_CASE("action space follows the playbook order and survives exclusions") {
  const auto guideline = [] {
    BehaviorGuideline g = default_guideline(env::Team::Red);
    // Preference order Escalate > Exploit > Discover for this test.
    std::reverse(g.entries.begin(), g.entries.end());
    return g;
  }();
  const int H = 13;
  const std::vector<env::Action> legal = {
      red_action(env::Verb::Discover, 1), red_action(env::Verb::Discover, 2),
      red_action(env::Verb::Exploit, 0), red_action(env::Verb::Escalate, 3)};

  auto space = build_action_space(guideline, legal, {}, H);
  REQUIRE(space.size() == 4);
  CHECK(space[0] == red_action(env::Verb::Escalate, 3));
  CHECK(space[1] == red_action(env::Verb::Exploit, 0));
  CHECK(space[2] == red_action(env::Verb::Discover, 1));
  CHECK(space[3] == red_action(env::Verb::Discover, 2));

  // Exclusions drop entries.
  space = build_action_space(guideline, legal, {red_action(env::Verb::Escalate, 3)}, H);
  REQUIRE(space.size() == 3);
  CHECK(space[0] == red_action(env::Verb::Exploit, 0));

  // Excluding everything restores the full list so the agent can always act.
  space = build_action_space(guideline, legal, legal, H);
  CHECK(space.size() == 4);

  // Verbs missing from the playbook sort last.
  const std::vector<env::Action> with_sleep = {red_action(env::Verb::Sleep, env::kNoTarget),
                                               red_action(env::Verb::Discover, 1)};
  space = build_action_space(guideline, with_sleep, {}, H);
  CHECK(space[0] == red_action(env::Verb::Discover, 1));
  CHECK(space[1] == red_action(env::Verb::Sleep, env::kNoTarget));
}

TEST_CASE("decision step offers the scripted backend a parseable prompt") {
  const auto scenario = env::compile_scenario(star_config());
  const auto guideline = default_guideline(env::Team::Red);
  const auto prompts = PromptLibrary::builtin();
  auto state = env::build_scenario(std::make_shared<const env::Scenario>(scenario));

  DecisionContext ctx;
  ctx.team = env::Team::Red;
  ctx.step = 0;
  ctx.observation = env::observe(state, env::Team::Red);
  ctx.guideline = &guideline;
  ctx.scenario = &scenario;
  ctx.action_space = {red_action(env::Verb::Discover, 1), red_action(env::Verb::Discover, 2),
                      red_action(env::Verb::Discover, 3)};
  ctx.suggestions = {suggest(env::Verb::Discover, 2, 0.7)};

  llm::ScriptedGateway gateway;
  const auto outcome = decide(ctx, gateway, prompts);

  // High-confidence suggestion offered in the space: the backend takes it.
  CHECK(outcome.action == red_action(env::Verb::Discover, 2));
  CHECK(outcome.accepted);
  CHECK(outcome.fallback_level == 0);
  CHECK(outcome.raw_reply == "Discover(C)");

  CHECK(contains(outcome.prompt, "Role: red"));
  CHECK(contains(outcome.prompt,
                 "Observation: last action succeeded; hosts: A=privileged B=unknown "
                 "C=unknown D=unknown; flagged: none"));
  CHECK(contains(outcome.prompt, "Relevant memory:\nnone"));
  CHECK(contains(outcome.prompt, "Suggestions: Discover(C) [confidence 0.7, q]"));
  CHECK(contains(outcome.prompt, "Action space: Discover(B) | Discover(C) | Discover(D)"));
  CHECK(contains(outcome.prompt, "Dilemma: no"));
  CHECK_FALSE(contains(outcome.prompt, "Reminder:"));

  // A weak suggestion outside a dilemma is ignored; the backend then walks
  // its verb preference through the offered order.
  ctx.suggestions = {suggest(env::Verb::Discover, 3, 0.3)};
  const auto declined = decide(ctx, gateway, prompts);
  CHECK(declined.action == red_action(env::Verb::Discover, 1));
  CHECK_FALSE(declined.accepted);

  // The same weak suggestion is taken when the step is a dilemma, through
  // the reflection template.
  ctx.dilemma = true;
  ctx.suspicious = {red_action(env::Verb::Discover, 1)};
  const auto desperate = decide(ctx, gateway, prompts);
  CHECK(desperate.action == red_action(env::Verb::Discover, 3));
  CHECK(desperate.accepted);
  CHECK(contains(desperate.prompt, "Dilemma: yes"));
  CHECK(contains(desperate.prompt, "Recent actions (Discover(B)) made no progress"));
}

TEST_CASE("decision step retries once and then falls back deterministically") {
  const auto scenario = env::compile_scenario(star_config());
  const auto guideline = default_guideline(env::Team::Red);
  const auto prompts = PromptLibrary::builtin();
  auto state = env::build_scenario(std::make_shared<const env::Scenario>(scenario));

  DecisionContext ctx;
  ctx.team = env::Team::Red;
  ctx.observation = env::observe(state, env::Team::Red);
  ctx.guideline = &guideline;
  ctx.scenario = &scenario;
  ctx.action_space = {red_action(env::Verb::Discover, 2), red_action(env::Verb::Discover, 1)};

  // Garbage first, valid on the reminder retry.
  {
    StubGateway gateway({"hmm, let me think...", "Discover(B) looks right"});
    const auto outcome = decide(ctx, gateway, prompts);
    CHECK(outcome.action == red_action(env::Verb::Discover, 1));
    CHECK(outcome.fallback_level == 1);
    REQUIRE(gateway.requests.size() == 2);
    CHECK(contains(gateway.requests[1].user_prompt,
                   "Reminder: answer with exactly one action name from the action space."));
    // The system prompt carries the standing orders.
    CHECK(gateway.requests[0].system_prompt == guideline.to_text());
  }

  // Garbage twice: lowest-ordinal action in the space, regardless of its
  // position in the offered ordering.
  {
    StubGateway gateway({"no", "still no"});
    const auto outcome = decide(ctx, gateway, prompts);
    CHECK(outcome.fallback_level == 2);
    CHECK(outcome.action == red_action(env::Verb::Discover, 1));
    CHECK_FALSE(outcome.accepted);
  }

  // Naming a legal-but-not-offered action is a parse failure, not a pick.
  {
    StubGateway gateway({"Sleep", "Sleep"});
    const auto outcome = decide(ctx, gateway, prompts);
    CHECK(outcome.fallback_level == 2);
    CHECK(outcome.action == red_action(env::Verb::Discover, 1));
  }

  // The fallback still counts as accepted when it happens to match a shown
  // suggestion.
  {
    ctx.suggestions = {suggest(env::Verb::Discover, 1, 0.9)};
    StubGateway gateway({"eh", "meh"});
    const auto outcome = decide(ctx, gateway, prompts);
    CHECK(outcome.fallback_level == 2);
    CHECK(outcome.accepted);
  }

  // Transport errors propagate to the caller; the episode deals with them.
  {
    DownGateway down;
    CHECK_THROWS_AS(decide(ctx, down, prompts), llm::GatewayError);
  }
}

TEST_CASE("blue decisions run through the same machinery") {
  const auto scenario = env::compile_scenario(star_config());
  const auto guideline = default_guideline(env::Team::Blue);
  const auto prompts = PromptLibrary::builtin();
  auto state = env::build_scenario(std::make_shared<const env::Scenario>(scenario));

  DecisionContext ctx;
  ctx.team = env::Team::Blue;
  ctx.observation = env::observe(state, env::Team::Blue);
  ctx.guideline = &guideline;
  ctx.scenario = &scenario;
  ctx.action_space = {{env::Team::Blue, env::Verb::Monitor, env::kNoTarget},
                      {env::Team::Blue, env::Verb::Remove, 1},
                      {env::Team::Blue, env::Verb::Restore, 2}};

  llm::ScriptedGateway gateway;
  const auto outcome = decide(ctx, gateway, prompts);
  // The scripted backend prefers Remove over Restore over Monitor.
  CHECK(outcome.action == env::Action{env::Team::Blue, env::Verb::Remove, 1});
  CHECK(outcome.fallback_level == 0);
  CHECK(contains(outcome.prompt, "Role: blue"));

  // A memory line renders into the prompt verbatim.
  MemoryRecord m;
  m.timestamp = 2;
  m.action = "Remove(B)";
  m.success = true;
  m.reward = 0.5;
  m.importance = 7;
  ctx.memories = {m};
  const auto with_memory = decide(ctx, gateway, prompts);
  CHECK(contains(with_memory.prompt, "- step 2: Remove(B) succeeded, reward 0.5, importance 7"));
}
