#include "cyberops/agents/prompts.hpp"

#include <filesystem>

#include "cyberops/common/errors.hpp"
#include "cyberops/common/text.hpp"

namespace cyberops::agents {
namespace {

const char* kDecisionTemplate =
    "Role: {role}\n"
    "Goal: {goal}\n"
    "Step: {step}\n"
    "Observation: {observation}\n"
    "Relevant memory:\n"
    "{memories}\n"
    "Reward delta: {reward_delta}\n"
    "Dilemma: {dilemma}\n"
    "Suggestions: {suggestions}\n"
    "Action space: {action_space}\n"
    "Pick exactly one action from the action space above. Answer with its name only.\n";

const char* kReflectionTemplate =
    "Role: {role}\n"
    "Goal: {goal}\n"
    "Step: {step}\n"
    "Observation: {observation}\n"
    "Relevant memory:\n"
    "{memories}\n"
    "Recent actions ({suspicious}) made no progress, so they were set aside. Try a "
    "different line of play.\n"
    "Reward delta: {reward_delta}\n"
    "Dilemma: {dilemma}\n"
    "Suggestions: {suggestions}\n"
    "Action space: {action_space}\n"
    "Pick exactly one action from the action space above. Answer with its name only.\n";

const char* kProfileTemplate =
    "Role: {role}\n"
    "Goal: {goal}\n"
    "You act once per step with a verb, most verbs aimed at one host: Verb(Host).\n"
    "Your verbs: {verbs}.\n"
    "Write a numbered action sequence explaining when each verb is worth playing.\n"
    "Use exactly this line format, one line per verb:\n"
    "1. action: <Verb>; goal: <why>; trigger: <when>; following: <next verb>; "
    "outcome: <expected result>\n";

const char* kImportanceTemplate =
    "Role: {role}\n"
    "One step just resolved.\n"
    "Action: {action}\n"
    "Succeeded: {success}\n"
    "Reward delta: {reward_delta}\n"
    "Rate the importance of remembering this step on a scale of 0 to 10. Answer "
    "with a single integer.\n";

std::map<std::string, std::string> builtin_templates() {
  std::map<std::string, std::string> t;
  for (const char* role : {"red", "blue"}) {
    t[std::string(role) + ".decision"] = kDecisionTemplate;
    t[std::string(role) + ".reflection"] = kReflectionTemplate;
    t[std::string(role) + ".profile"] = kProfileTemplate;
  }
  t["importance"] = kImportanceTemplate;
  return t;
}

}  // namespace

PromptLibrary PromptLibrary::builtin() {
  PromptLibrary lib;
  lib.templates_ = builtin_templates();
  return lib;
}

PromptLibrary PromptLibrary::from_directory(const std::string& dir) {
  PromptLibrary lib = builtin();
  if (!std::filesystem::is_directory(dir))
    throw IoError("prompt directory not found: " + dir);
  for (auto& [key, text] : lib.templates_) {
    std::string name = key;
    for (char& c : name)
      if (c == '.') c = '_';
    const auto path = std::filesystem::path(dir) / (name + ".txt");
    if (std::filesystem::is_regular_file(path)) text = read_text_file(path.string());
  }
  return lib;
}

std::string PromptLibrary::key_for(env::Team team, std::string_view purpose) {
  return std::string(env::to_string(team)) + "." + std::string(purpose);
}

const std::string& PromptLibrary::raw(const std::string& key) const {
  const auto it = templates_.find(key);
  if (it == templates_.end()) throw ConfigError("unknown prompt template: " + key);
  return it->second;
}

std::string PromptLibrary::render(const std::string& key,
                                  const std::map<std::string, std::string>& values) const {
  const std::string& tpl = raw(key);
  std::string out;
  out.reserve(tpl.size());
  std::size_t pos = 0;
  while (pos < tpl.size()) {
    const std::size_t open = tpl.find('{', pos);
    if (open == std::string::npos) {
      out.append(tpl, pos, std::string::npos);
      break;
    }
    out.append(tpl, pos, open - pos);
    const std::size_t close = tpl.find('}', open);
    if (close == std::string::npos) {
      out.append(tpl, open, std::string::npos);
      break;
    }
    const std::string name = tpl.substr(open + 1, close - open - 1);
    if (const auto it = values.find(name); it != values.end()) {
      out += it->second;
    } else {
      out.append(tpl, open, close - open + 1);
    }
    pos = close + 1;
  }
  return out;
}

}  // namespace cyberops::agents
