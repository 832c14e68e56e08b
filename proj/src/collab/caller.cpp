#include "cyberops/collab/caller.hpp"

#include <utility>

#include "cyberops/common/errors.hpp"

namespace cyberops::collab {
namespace {
constexpr int kTopK = 3;
}

void MentorPool::add(mentors::PolicyArtifact mentor) {
  if (!mentors_.empty() && mentors_.front().team != mentor.team)
    throw ConfigError("all mentors in a pool must play the same team");
  mentors_.push_back(std::move(mentor));
}

std::vector<std::vector<mentors::Suggestion>> MentorPool::query_all(
    const env::Observation& obs) const {
  std::vector<std::vector<mentors::Suggestion>> lists;
  lists.reserve(mentors_.size());
  for (const auto& mentor : mentors_) {
    lists.push_back(mentor.suggest(obs, kTopK));
    query_count_.fetch_add(1);
  }
  return lists;
}

std::vector<mentors::Suggestion> MentorPool::consult(const env::Observation& obs) const {
  if (mentors_.empty()) return {};
  auto merged = aggregate(query_all(obs), mentors_.front().scenario->host_count());
  if (merged.size() > 1) merged.resize(1);
  return merged;
}

std::vector<mentors::Suggestion> MentorPool::call_for_help(const env::Observation& obs) const {
  if (mentors_.empty()) return {};
  auto merged = aggregate(query_all(obs), mentors_.front().scenario->host_count());
  if (merged.size() > kTopK) merged.resize(kTopK);
  return merged;
}

}  // namespace cyberops::collab
