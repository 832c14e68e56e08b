#include "cyberops/collab/aggregator.hpp"

#include <algorithm>
#include <map>

namespace cyberops::collab {

std::vector<mentors::Suggestion> aggregate(
    const std::vector<std::vector<mentors::Suggestion>>& per_mentor, int host_count) {
  struct Entry {
    mentors::Suggestion suggestion;
    std::size_t mentor_index;
  };

  std::map<int, Entry> by_ordinal;
  for (std::size_t m = 0; m < per_mentor.size(); ++m) {
    for (const auto& s : per_mentor[m]) {
      const int ordinal = env::action_ordinal(s.action, host_count);
      const auto [it, inserted] = by_ordinal.try_emplace(ordinal, Entry{s, m});
      if (!inserted && s.confidence > it->second.suggestion.confidence) it->second = {s, m};
    }
  }

  std::vector<Entry> merged;
  merged.reserve(by_ordinal.size());
  for (const auto& [ordinal, entry] : by_ordinal) merged.push_back(entry);

  std::stable_sort(merged.begin(), merged.end(), [host_count](const Entry& a, const Entry& b) {
    if (a.suggestion.confidence != b.suggestion.confidence)
      return a.suggestion.confidence > b.suggestion.confidence;
    if (a.mentor_index != b.mentor_index) return a.mentor_index < b.mentor_index;
    return env::action_ordinal(a.suggestion.action, host_count) <
           env::action_ordinal(b.suggestion.action, host_count);
  });

  std::vector<mentors::Suggestion> out;
  out.reserve(merged.size());
  for (const auto& entry : merged) out.push_back(entry.suggestion);
  return out;
}

}  // namespace cyberops::collab
