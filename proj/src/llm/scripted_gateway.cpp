#include "cyberops/llm/scripted_gateway.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <vector>

#include "cyberops/common/text.hpp"

namespace cyberops::llm {
namespace {

// Returns the remainder of the first line starting with the given prefix.
std::optional<std::string> line_after(const std::string& text, std::string_view prefix) {
  for (const auto& raw : split(text, '\n')) {
    const std::string line = trim(raw);
    if (line.size() >= prefix.size() &&
        to_lower(line.substr(0, prefix.size())) == to_lower(prefix))
      return trim(line.substr(prefix.size()));
  }
  return std::nullopt;
}

std::vector<std::string> parse_items(const std::string& joined) {
  std::vector<std::string> items;
  for (const auto& part : split_on(joined, " | ")) {
    const std::string item = trim(part);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

struct PromptedSuggestion {
  std::string action;
  double confidence = 0.0;
};

std::vector<PromptedSuggestion> parse_suggestions(const std::string& joined) {
  std::vector<PromptedSuggestion> out;
  if (to_lower(trim(joined)) == "none") return out;
  for (const auto& item : parse_items(joined)) {
    PromptedSuggestion s;
    const std::size_t bracket = item.find(" [");
    s.action = trim(item.substr(0, bracket));
    const std::size_t conf = item.find("confidence ");
    if (conf != std::string::npos)
      s.confidence = std::strtod(item.c_str() + conf + 11, nullptr);
    if (!s.action.empty()) out.push_back(std::move(s));
  }
  return out;
}

bool item_has_verb(const std::string& item, std::string_view verb) {
  if (item.size() < verb.size()) return false;
  if (to_lower(item.substr(0, verb.size())) != to_lower(verb)) return false;
  return item.size() == verb.size() || item[verb.size()] == '(';
}

std::string decide(const std::string& prompt) {
  const auto space_line = line_after(prompt, "Action space:");
  const auto space = parse_items(*space_line);
  if (space.empty()) return "Sleep";

  const auto dilemma_line = line_after(prompt, "Dilemma:");
  const bool dilemma = dilemma_line && to_lower(*dilemma_line) == "yes";

  if (const auto sug_line = line_after(prompt, "Suggestions:")) {
    for (const auto& s : parse_suggestions(*sug_line)) {
      const bool offered =
          std::find(space.begin(), space.end(), s.action) != space.end();
      if (offered && (s.confidence >= 0.5 || dilemma)) return s.action;
    }
  }

  const bool red_space = [&] {
    for (const char* v : {"Discover", "Exploit", "Escalate"})
      if (item_has_verb(space.front(), v)) return true;
    return space.front() == "Sleep";
  }();
  const std::vector<const char*> preference =
      red_space ? std::vector<const char*>{"Escalate", "Exploit", "Discover"}
                : std::vector<const char*>{"Remove", "Restore", "Monitor"};
  for (const char* verb : preference)
    for (const auto& item : space)
      if (item_has_verb(item, verb)) return item;
  return space.front();
}

std::string rate_importance(const std::string& prompt) {
  double delta = 0.0;
  if (const auto line = line_after(prompt, "Reward delta:"))
    delta = std::strtod(line->c_str(), nullptr);
  const long score = std::lround(10.0 * std::min(1.0, std::fabs(delta) / 10.0));
  return std::to_string(score);
}

}  // namespace

std::string canned_guideline_text(env::Team team) {
  if (team == env::Team::Red) {
    return "1. action: Discover; goal: map reachable hosts; trigger: a privileged host has "
           "unknown neighbors; following: Exploit; outcome: target host becomes known\n"
           "2. action: Exploit; goal: gain user access; trigger: a known host is reachable from "
           "a compromised host; following: Escalate; outcome: target host becomes exploited\n"
           "3. action: Escalate; goal: gain root access; trigger: an exploited host exists; "
           "following: Discover; outcome: target host becomes privileged\n";
  }
  return "1. action: Monitor; goal: refresh the activity snapshot; trigger: no host is flagged "
         "as suspicious; following: Remove, Restore; outcome: fresh view of adversary activity\n"
         "2. action: Remove; goal: evict user-level access; trigger: a flagged host appears "
         "exploited; following: Monitor; outcome: host drops back to known\n"
         "3. action: Restore; goal: rebuild rooted hosts; trigger: a flagged host appears "
         "privileged; following: Monitor; outcome: host drops back to known\n";
}

CompletionResult ScriptedGateway::complete(const CompletionRequest& request) {
  CompletionResult result;
  result.backend_id = id();
  const std::string& prompt = request.user_prompt;

  if (contains_ci(prompt, "rate the importance")) {
    result.text = rate_importance(prompt);
  } else if (contains_ci(prompt, "numbered action sequence")) {
    const auto role = line_after(prompt, "Role:");
    const auto team = role ? env::team_from_string(*role) : std::nullopt;
    result.text = canned_guideline_text(team.value_or(env::Team::Red));
  } else if (line_after(prompt, "Action space:")) {
    result.text = decide(prompt);
  } else {
    result.text = "OK";
  }
  return result;
}

}  // namespace cyberops::llm
