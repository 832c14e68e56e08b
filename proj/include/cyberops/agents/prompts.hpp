#pragma once

#include <map>
#include <string>

#include "cyberops/env/types.hpp"

namespace cyberops::agents {

// Named prompt templates with {placeholder} substitution. Built-in templates
// cover both roles; a directory of <key>.txt files (dots replaced with
// underscores, e.g. red_decision.txt) can override any subset.
class PromptLibrary {
 public:
  static PromptLibrary builtin();
  static PromptLibrary from_directory(const std::string& dir);

  static std::string key_for(env::Team team, std::string_view purpose);

  bool has(const std::string& key) const { return templates_.count(key) > 0; }
  const std::string& raw(const std::string& key) const;

  // Replaces every {name} present in values; unknown placeholders are kept
  // verbatim so a template typo is visible instead of silently dropped.
  std::string render(const std::string& key,
                     const std::map<std::string, std::string>& values) const;

 private:
  std::map<std::string, std::string> templates_;
};

}  // namespace cyberops::agents
