#include "cyberops/agents/decide.hpp"

#include <algorithm>
#include <cassert>

#include "cyberops/common/text.hpp"
#include "cyberops/llm/parsers.hpp"

namespace cyberops::agents {
namespace {

std::string observation_text(const env::Observation& obs, const env::Scenario& scenario) {
  std::string out = obs.success ? "last action succeeded" : "last action failed";
  out += "; hosts:";
  for (int h = 0; h < scenario.host_count(); ++h) {
    out += ' ';
    out += scenario.labels[static_cast<std::size_t>(h)];
    out += '=';
    out += to_lower(env::to_string(obs.status[static_cast<std::size_t>(h)]));
  }
  std::string flagged;
  for (int h = 0; h < scenario.host_count(); ++h) {
    if (!obs.activity[static_cast<std::size_t>(h)]) continue;
    if (!flagged.empty()) flagged += ", ";
    flagged += scenario.labels[static_cast<std::size_t>(h)];
  }
  out += "; flagged: " + (flagged.empty() ? "none" : flagged);
  return out;
}

std::string memory_text(const std::vector<MemoryRecord>& memories) {
  if (memories.empty()) return "none";
  std::string out;
  for (const auto& m : memories) {
    if (!out.empty()) out += '\n';
    out += "- step " + std::to_string(m.timestamp) + ": " + m.action +
           (m.success ? " succeeded" : " failed") + ", reward " + format_double(m.reward) +
           ", importance " + std::to_string(m.importance);
  }
  return out;
}

std::string suggestion_text(const std::vector<mentors::Suggestion>& suggestions,
                            const env::Scenario& scenario) {
  if (suggestions.empty()) return "none";
  std::string out;
  for (const auto& s : suggestions) {
    if (!out.empty()) out += " | ";
    out += scenario.action_name(s.action) + " [confidence " + format_double(s.confidence) +
           ", " + s.mentor_id + "]";
  }
  return out;
}

std::string space_text(const std::vector<env::Action>& space, const env::Scenario& scenario) {
  std::string out;
  for (const auto& a : space) {
    if (!out.empty()) out += " | ";
    out += scenario.action_name(a);
  }
  return out;
}

std::string suspicious_text(const std::vector<env::Action>& suspicious,
                            const env::Scenario& scenario) {
  if (suspicious.empty()) return "none";
  std::string out;
  for (const auto& a : suspicious) {
    if (!out.empty()) out += ", ";
    out += scenario.action_name(a);
  }
  return out;
}

bool matches_suggestion(const env::Action& action,
                        const std::vector<mentors::Suggestion>& suggestions) {
  return std::any_of(suggestions.begin(), suggestions.end(),
                     [&](const mentors::Suggestion& s) { return s.action == action; });
}

}  // namespace

DecisionOutcome decide(const DecisionContext& context, llm::CompletionGateway& gateway,
                       const PromptLibrary& prompts) {
  assert(context.guideline != nullptr && context.scenario != nullptr);
  assert(!context.action_space.empty());
  const env::Scenario& scenario = *context.scenario;

  const std::string key =
      PromptLibrary::key_for(context.team, context.dilemma ? "reflection" : "decision");
  DecisionOutcome outcome;
  outcome.prompt = prompts.render(
      key, {
               {"role", env::to_string(context.team)},
               {"goal", context.guideline->goal},
               {"step", std::to_string(context.step)},
               {"observation", observation_text(context.observation, scenario)},
               {"memories", memory_text(context.memories)},
               {"reward_delta", format_double(context.reward_delta)},
               {"dilemma", context.dilemma ? "yes" : "no"},
               {"suggestions", suggestion_text(context.suggestions, scenario)},
               {"action_space", space_text(context.action_space, scenario)},
               {"suspicious", suspicious_text(context.suspicious, scenario)},
           });
  const std::string system = context.guideline->to_text();

  for (int attempt = 0; attempt < 2; ++attempt) {
    outcome.raw_reply = gateway.complete({system, outcome.prompt}).text;
    const auto parsed = llm::parse_action(outcome.raw_reply, context.action_space, scenario);
    if (const auto* action = std::get_if<env::Action>(&parsed)) {
      outcome.action = *action;
      outcome.accepted = matches_suggestion(*action, context.suggestions);
      outcome.fallback_level = attempt;
      return outcome;
    }
    if (attempt == 0)
      outcome.prompt +=
          "\nReminder: answer with exactly one action name from the action space.\n";
  }

  const int H = scenario.host_count();
  outcome.action = *std::min_element(
      context.action_space.begin(), context.action_space.end(),
      [H](const env::Action& a, const env::Action& b) {
        return env::action_ordinal(a, H) < env::action_ordinal(b, H);
      });
  outcome.accepted = matches_suggestion(outcome.action, context.suggestions);
  outcome.fallback_level = 2;
  return outcome;
}

}  // namespace cyberops::agents
