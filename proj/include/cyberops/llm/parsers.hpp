#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cyberops/env/scenario.hpp"
#include "cyberops/env/types.hpp"

namespace cyberops::llm {

enum class ActionParseError {
  NoActionFound,  // no token in the text parses as an action
  OutOfSpace,     // an action parsed but is not in the offered space
};

const char* to_string(ActionParseError error);

// Scans the reply left to right for the first token of the form
// "Verb(TargetLabel)" or "Verb TargetLabel" (bare verb for Monitor/Sleep),
// case-insensitively, and matches it against the offered action space.
std::variant<env::Action, ActionParseError> parse_action(const std::string& text,
                                                         const std::vector<env::Action>& space,
                                                         const env::Scenario& scenario);

// First integer in [0, 10] found in the reply. When no integer is in range
// but one within [-100, 100] exists, the first such is clamped into [0, 10].
// Anything else yields nullopt.
std::optional<int> parse_importance(const std::string& text);

}  // namespace cyberops::llm
