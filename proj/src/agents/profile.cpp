#include "cyberops/agents/profile.hpp"

#include <algorithm>
#include <cctype>

#include "cyberops/common/log.hpp"
#include "cyberops/common/text.hpp"
#include "cyberops/llm/scripted_gateway.hpp"

namespace cyberops::agents {
namespace {

std::string default_goal(env::Team team) {
  return team == env::Team::Red
             ? "Spread through the network and take privileged control of valuable hosts."
             : "Keep the network clean: watch for intrusions and evict them quickly.";
}

std::string default_environment_format() {
  return "A fixed set of labelled hosts; one action per step, written Verb or Verb(Host).";
}

// Splits "key: value" around the first colon; returns true when key matches.
bool take_field(std::string_view part, std::string_view key, std::string& out) {
  const std::size_t colon = part.find(':');
  if (colon == std::string_view::npos) return false;
  if (to_lower(trim(part.substr(0, colon))) != key) return false;
  out = trim(part.substr(colon + 1));
  return true;
}

}  // namespace

int BehaviorGuideline::verb_rank(env::Verb verb) const {
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (entries[i].verb == verb) return static_cast<int>(i);
  return static_cast<int>(entries.size()) + static_cast<int>(verb);
}

std::string BehaviorGuideline::to_text() const {
  std::string out = "Role: ";
  out += env::to_string(role);
  out += "\nGoal: " + goal;
  out += "\nEnvironment: " + environment_format;
  out += "\nAction sequence:\n";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    out += std::to_string(i + 1);
    out += ". action: ";
    out += env::to_string(e.verb);
    out += "; goal: " + e.goal;
    out += "; trigger: " + e.trigger;
    out += "; following: " + e.following;
    out += "; outcome: " + e.outcome + "\n";
  }
  return out;
}

std::vector<GuidelineEntry> parse_guideline_text(const std::string& text, env::Team team) {
  std::vector<GuidelineEntry> entries;
  for (const auto& raw : split(text, '\n')) {
    std::string line = trim(raw);
    // Strip a leading "N." or "N)" list marker.
    std::size_t i = 0;
    while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
    if (i > 0 && i < line.size() && (line[i] == '.' || line[i] == ')')) line = trim(line.substr(i + 1));

    GuidelineEntry entry;
    std::string verb_name;
    bool has_verb = false;
    for (const auto& part : split(line, ';')) {
      std::string value;
      if (take_field(part, "action", value)) {
        verb_name = value;
        has_verb = true;
      } else if (take_field(part, "goal", value)) {
        entry.goal = value;
      } else if (take_field(part, "trigger", value)) {
        entry.trigger = value;
      } else if (take_field(part, "following", value)) {
        entry.following = value;
      } else if (take_field(part, "outcome", value)) {
        entry.outcome = value;
      }
    }
    if (!has_verb) continue;
    const auto verb = env::verb_from_string(verb_name);
    if (!verb || !env::verb_belongs_to(*verb, team)) continue;
    entry.verb = *verb;
    const bool seen = std::any_of(entries.begin(), entries.end(),
                                  [&](const GuidelineEntry& e) { return e.verb == entry.verb; });
    if (!seen) entries.push_back(std::move(entry));
  }
  return entries;
}

BehaviorGuideline default_guideline(env::Team team) {
  BehaviorGuideline g;
  g.role = team;
  g.goal = default_goal(team);
  g.environment_format = default_environment_format();
  g.entries = parse_guideline_text(llm::canned_guideline_text(team), team);
  return g;
}

BehaviorGuideline init_profile(env::Team team, llm::CompletionGateway& gateway,
                               const PromptLibrary& prompts) {
  BehaviorGuideline g = default_guideline(team);
  const std::map<std::string, std::string> values = {
      {"role", env::to_string(team)},
      {"goal", g.goal},
      {"verbs", team == env::Team::Red ? "Discover(Host), Exploit(Host), Escalate(Host)"
                                       : "Monitor, Remove(Host), Restore(Host)"},
  };
  std::string prompt = prompts.render(PromptLibrary::key_for(team, "profile"), values);
  const std::string system = "You are preparing standing orders for a network operator.";

  for (int attempt = 0; attempt < 2; ++attempt) {
    std::string reply;
    try {
      reply = gateway.complete({system, prompt}).text;
    } catch (const llm::GatewayError& err) {
      log_warn(std::string("profile request failed, using built-in playbook: ") + err.what());
      return g;
    }
    auto entries = parse_guideline_text(reply, team);
    if (!entries.empty()) {
      g.entries = std::move(entries);
      return g;
    }
    prompt += "\nReminder: follow the numbered line format exactly.\n";
  }
  log_warn("profile reply was unparseable twice, using built-in playbook");
  return g;
}

}  // namespace cyberops::agents
