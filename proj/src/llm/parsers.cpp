#include "cyberops/llm/parsers.hpp"

#include <algorithm>
#include <cctype>

#include "cyberops/common/text.hpp"

namespace cyberops::llm {
namespace {

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

// Reads the word starting at `pos` (must be a word char position).
std::string_view word_at(std::string_view text, std::size_t pos, std::size_t* end) {
  std::size_t e = pos;
  while (e < text.size() && is_word_char(text[e])) ++e;
  *end = e;
  return text.substr(pos, e - pos);
}

}  // namespace

const char* to_string(ActionParseError error) {
  switch (error) {
    case ActionParseError::NoActionFound: return "NoActionFound";
    case ActionParseError::OutOfSpace: return "OutOfSpace";
  }
  return "?";
}

std::variant<env::Action, ActionParseError> parse_action(const std::string& text,
                                                         const std::vector<env::Action>& space,
                                                         const env::Scenario& scenario) {
  using env::Action;
  const std::string_view sv(text);
  std::size_t i = 0;
  while (i < sv.size()) {
    if (!is_word_char(sv[i]) || (i > 0 && is_word_char(sv[i - 1]))) {
      ++i;
      continue;
    }
    std::size_t word_end = 0;
    const std::string_view word = word_at(sv, i, &word_end);
    const auto verb = env::verb_from_string(word);
    if (!verb) {
      i = word_end;
      continue;
    }

    std::optional<Action> candidate;
    if (!env::verb_takes_target(*verb)) {
      candidate = Action{space.empty() ? env::Team::Red : space.front().team, *verb,
                         env::kNoTarget};
    } else {
      // Accept "Verb(Label)" or "Verb Label" where Label is a real host.
      std::size_t j = word_end;
      while (j < sv.size() && (sv[j] == ' ' || sv[j] == '\t')) ++j;
      bool paren = false;
      if (j < sv.size() && sv[j] == '(') {
        paren = true;
        ++j;
        while (j < sv.size() && (sv[j] == ' ' || sv[j] == '\t')) ++j;
      }
      if (j < sv.size() && is_word_char(sv[j])) {
        std::size_t label_end = 0;
        const std::string_view label = word_at(sv, j, &label_end);
        const bool closed = !paren || (label_end < sv.size() && sv[label_end] == ')');
        const int host = scenario.index_of(label);
        if (closed && host >= 0)
          candidate = Action{space.empty() ? env::Team::Red : space.front().team, *verb, host};
      }
    }

    if (candidate) {
      const auto hit = std::find(space.begin(), space.end(), *candidate);
      if (hit != space.end()) return *hit;
      return ActionParseError::OutOfSpace;
    }
    i = word_end;
  }
  return ActionParseError::NoActionFound;
}

std::optional<int> parse_importance(const std::string& text) {
  std::vector<long> integers;
  const std::string_view sv(text);
  std::size_t i = 0;
  while (i < sv.size()) {
    const bool digit = std::isdigit(static_cast<unsigned char>(sv[i])) != 0;
    const bool neg = sv[i] == '-' && i + 1 < sv.size() &&
                     std::isdigit(static_cast<unsigned char>(sv[i + 1])) != 0;
    if (!(digit || neg) || (i > 0 && is_word_char(sv[i - 1]))) {
      ++i;
      continue;
    }
    std::size_t j = i + (neg ? 1 : 0);
    long value = 0;
    bool overflow = false;
    while (j < sv.size() && std::isdigit(static_cast<unsigned char>(sv[j]))) {
      value = value * 10 + (sv[j] - '0');
      if (value > 1000000) overflow = true;
      ++j;
    }
    if (!overflow) integers.push_back(neg ? -value : value);
    i = j;
  }

  for (const long v : integers)
    if (v >= 0 && v <= 10) return static_cast<int>(v);
  for (const long v : integers)
    if (v >= -100 && v <= 100) return static_cast<int>(std::clamp(v, 0L, 10L));
  return std::nullopt;
}

}  // namespace cyberops::llm
